// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use xmodcat::abelian::{FiniteAbelianGroup, GammaModule};
use xmodcat::catgroup::{build_catgroup, check_axioms};
use xmodcat::cohomology::{coboundary2, h2_brute, h2_snf, representatives_compatible, Cochain1};
use xmodcat::corpus::{random_module, rng};
use xmodcat::group::{homomorphisms, FiniteGroup, GammaAction};
use xmodcat::linalg::{hom_kernel_image, smith, IntMatrix};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Sorted element orders of `⊕ ℤ/dᵢ`.
fn order_profile(invariants: &[u64]) -> Vec<u64> {
    let mut out = vec![1u64];
    for &d in invariants {
        let mut next = Vec::new();
        for &o in &out {
            for k in 0..d {
                let ok = d / gcd(d, k);
                next.push(o / gcd(o, ok) * ok);
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

fn elements(moduli: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &m in moduli {
        out = out.into_iter().flat_map(|v: Vec<u64>| (0..m).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn element_order(x: &[u64], moduli: &[u64]) -> u64 {
    x.iter().zip(moduli).fold(1, |acc, (&xi, &m)| {
        let o = m / gcd(m, xi);
        acc / gcd(acc, o) * o
    })
}

fn gamma_module(n: usize, negate: bool) -> Arc<GammaModule> {
    let g = Arc::new(FiniteGroup::cyclic(n));
    let act = if negate {
        GammaAction::involution(g, &(0..n).map(|x| (n - x) % n).collect::<Vec<_>>()).unwrap()
    } else {
        GammaAction::involution(g, &(0..n).collect::<Vec<_>>()).unwrap()
    };
    Arc::new(GammaModule::new(act).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn smith_factorises(rows in 1usize..4, cols in 1usize..4, entries in prop::collection::vec(-6i64..7, 16)) {
        let m = IntMatrix::from_rows(&(0..rows).map(|i| entries[i * cols..i * cols + cols].to_vec()).collect::<Vec<_>>());
        let sm = smith(&m);
        prop_assert_eq!(sm.u.mul(&m).mul(&sm.w), sm.s.clone());
        let diag = sm.diagonal();
        for w in diag.windows(2) {
            if w[0] != BigInt::from(0) {
                prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
            } else {
                prop_assert_eq!(&w[1], &BigInt::from(0));
            }
        }
    }

    #[test]
    fn kernel_and_image_match_enumeration(
        domain in prop::collection::vec(1u64..7, 1..3),
        codomain in prop::collection::vec(1u64..7, 1..3),
        raw in prop::collection::vec(0i64..6, 9),
    ) {
        // column j must satisfy aⱼ·x ≡ 0 mod cᵢ: scale by cᵢ / gcd(cᵢ, aⱼ)
        let entries: Vec<Vec<i64>> = (0..codomain.len())
            .map(|i| (0..domain.len()).map(|j| raw[i * 3 + j] * (codomain[i] / gcd(codomain[i], domain[j])) as i64).collect())
            .collect();
        let m = IntMatrix::from_rows(&entries);
        let ki = hom_kernel_image(&domain, &codomain, &m).unwrap();
        let image_of = |x: &[u64]| -> Vec<u64> {
            (0..codomain.len()).map(|i| x.iter().enumerate().map(|(j, &xj)| entries[i][j] * xj as i64).sum::<i64>().rem_euclid(codomain[i] as i64) as u64).collect()
        };
        let dom = elements(&domain);
        let mut kernel: Vec<u64> = dom.iter().filter(|x| image_of(x).iter().all(|&v| v == 0)).map(|x| element_order(x, &domain)).collect();
        kernel.sort_unstable();
        let mut image: Vec<Vec<u64>> = dom.iter().map(|x| image_of(x)).collect();
        image.sort();
        image.dedup();
        let mut image: Vec<u64> = image.iter().map(|y| element_order(y, &codomain)).collect();
        image.sort_unstable();
        prop_assert_eq!(order_profile(&ki.kernel.invariants), kernel);
        prop_assert_eq!(order_profile(&ki.image.invariants), image);
        for w in ki.kernel.invariants.windows(2).chain(ki.image.invariants.windows(2)) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn abelian_coordinates_round_trip(a in 1usize..5, b in 1usize..5) {
        let g = Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(a), &FiniteGroup::cyclic(b)));
        let ab = FiniteAbelianGroup::new(g.clone()).unwrap();
        prop_assert_eq!(ab.invariants().iter().product::<u64>(), (a * b) as u64);
        prop_assert_eq!(order_profile(ab.invariants()), order_profile(&[a as u64, b as u64]));
        for x in g.elements() {
            prop_assert_eq!(ab.from_coords(ab.coords(x)), x);
        }
    }

    #[test]
    fn cyclic_hom_count(m in 1usize..9, n in 1usize..9) {
        let (g, h) = (Arc::new(FiniteGroup::cyclic(m)), Arc::new(FiniteGroup::cyclic(n)));
        let homs = homomorphisms(&g, &h);
        prop_assert_eq!(homs.len() as u64, gcd(m as u64, n as u64));
        prop_assert!(homs.iter().all(|f| f.is_hom()));
    }

    #[test]
    fn coboundaries_are_cocycles(nq in 1usize..5, nb in 1usize..5, neg_q: bool, neg_b: bool, values in prop::collection::vec(0usize..4, 4)) {
        let (q, b) = (gamma_module(nq, neg_q), gamma_module(nb, neg_b));
        let mut values: Vec<usize> = values[..nq].iter().map(|&v| v % nb).collect();
        values[0] = 0;
        let f = coboundary2(&Cochain1 { q, b, values }).unwrap();
        prop_assert!(f.is_2cocycle());
    }

    #[test]
    fn h2_routes_agree(nq in 1usize..5, nb in 1usize..5, neg_q: bool, neg_b: bool) {
        let (q, b) = (gamma_module(nq, neg_q), gamma_module(nb, neg_b));
        let snf = h2_snf(&q, &b).unwrap();
        let brute = h2_brute(&q, &b, 1 << 24).unwrap();
        prop_assert_eq!(&snf.invariants, &brute.invariants);
        prop_assert!(representatives_compatible(&snf, &brute));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn random_modules_are_coherent(seed: u64) {
        let m = random_module(&mut rng(seed));
        let r = check_axioms(&build_catgroup(&m));
        prop_assert!(r.passed(), "{}", r);
    }
}

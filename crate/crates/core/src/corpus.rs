// SPDX-License-Identifier: Apache-2.0

//! Named instances and a seeded generator of small validated modules.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::FiniteAbelianGroup;
use crate::crossed::{conjugation_module, BraidedGammaCrossedModule, ValidatedModule};
use crate::group::{automorphisms, homomorphisms, FiniteGroup, GammaAction};

pub const SEED_VAR: &str = "XMODCAT_SEED";

/// `XMODCAT_SEED` if set and numeric, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

#[derive(Debug, Clone)]
pub struct NamedModule {
    pub name: String,
    pub module: ValidatedModule,
}

/// Automorphisms `α` with `α² = id` preserving `n`, in lexicographic order
/// of their tables; the identity comes first.
pub fn involutions_preserving(g: &Arc<FiniteGroup>, n: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = automorphisms(g)
        .into_iter()
        .map(|a| a.map)
        .filter(|a| g.elements().all(|x| a[a[x]] == x))
        .filter(|a| {
            let mut img: Vec<usize> = n.iter().map(|&x| a[x]).collect();
            img.sort_unstable();
            let mut n = n.to_vec();
            n.sort_unstable();
            img == n
        })
        .collect();
    out.sort();
    out
}

fn with_gamma(name: &str, g: FiniteGroup, n: impl Fn(&FiniteGroup) -> Vec<usize>) -> Vec<NamedModule> {
    let g = Arc::new(g);
    let n = n(&g);
    let triv = GammaAction::trivial(Arc::new(FiniteGroup::trivial()), g.clone());
    let inv = involutions_preserving(&g, &n);
    let alpha = inv.iter().find(|a| a.iter().enumerate().any(|(i, &x)| i != x)).expect("a nontrivial involution exists");
    let act = GammaAction::involution(g.clone(), alpha).expect("involution");
    vec![
        NamedModule { name: format!("{name}_gamma1"), module: conjugation_module(g.clone(), &triv, &n).expect("valid instance") },
        NamedModule { name: format!("{name}_gamma2"), module: conjugation_module(g, &act, &n).expect("valid instance") },
    ]
}

fn order4_subgroup(g: &FiniteGroup) -> Vec<usize> {
    let x = g.elements().find(|&x| g.element_order(x) == 4).expect("element of order 4");
    g.subgroup_generated(&[x])
}

/// Conjugation modules `(N, G)` for `S3 ⊵ A3`, `Q8 ⊵ ⟨i⟩`, `D4 ⊵ ⟨r⟩`,
/// each with trivial Γ and with Γ = ℤ/2 acting by an involution.
pub fn acceptance_modules() -> Vec<NamedModule> {
    let mut out = with_gamma("s3_a3", FiniteGroup::symmetric3(), |g| g.commutator_subgroup());
    out.extend(with_gamma("q8_i", FiniteGroup::quaternion(), order4_subgroup));
    out.extend(with_gamma("d4_r", FiniteGroup::dihedral8(), order4_subgroup));
    out
}

/// `(B, D, d, 0, η)` over cyclic groups; `act_*` give the involution of Γ = ℤ/2
/// or `None` for trivial Γ.
pub fn abelian_module(b: usize, dg: usize, d: Vec<usize>, eta: &[Vec<usize>], act: Option<(Vec<usize>, Vec<usize>)>) -> Option<ValidatedModule> {
    let (bg, dgg) = (Arc::new(FiniteGroup::cyclic(b)), Arc::new(FiniteGroup::cyclic(dg)));
    let (gamma, ab, ad) = match act {
        None => (FiniteGroup::trivial(), vec![(0..b).collect()], vec![(0..dg).collect()]),
        Some((x, y)) => (FiniteGroup::cyclic(2), vec![(0..b).collect(), x], vec![(0..dg).collect(), y]),
    };
    BraidedGammaCrossedModule::from_parts(bg, dgg, d, &vec![(0..b).collect(); dg], eta, Arc::new(gamma), &ab, &ad).ok()?.validated().ok()
}

fn zero_eta(dg: usize) -> Vec<Vec<usize>> {
    vec![vec![0; dg]; dg]
}

fn negation(n: usize) -> Vec<usize> {
    (0..n).map(|x| (n - x) % n).collect()
}

/// Abelian and biadditive-η modules over cyclic groups.
pub fn abelian_modules() -> Vec<NamedModule> {
    let named = |name: &str, m: Option<ValidatedModule>| NamedModule { name: name.into(), module: m.expect("valid instance") };
    vec![
        named("z2_to_0", abelian_module(2, 1, vec![0, 0], &zero_eta(1), None)),
        named("z2_to_z2_zero", abelian_module(2, 2, vec![0, 0], &zero_eta(2), None)),
        named("z2_to_z2_iso", abelian_module(2, 2, vec![0, 1], &zero_eta(2), None)),
        named("z2_to_z4", abelian_module(2, 4, vec![0, 2], &zero_eta(4), None)),
        named("z4_doubling_neg", abelian_module(4, 4, vec![0, 2, 0, 2], &zero_eta(4), Some((negation(4), negation(4))))),
        named("z4_doubling_negd", abelian_module(4, 4, vec![0, 2, 0, 2], &zero_eta(4), Some(((0..4).collect(), negation(4))))),
        named("z4_to_0_neg", abelian_module(4, 1, vec![0; 4], &zero_eta(1), Some((negation(4), vec![0])))),
        named("eta_z2_z2", abelian_module(2, 2, vec![0, 0], &[vec![0, 0], vec![0, 1]], None)),
        named("eta_z4_z2_neg", abelian_module(4, 2, vec![0; 4], &[vec![0, 0], vec![0, 2]], Some((negation(4), vec![0, 1])))),
    ]
}

/// Every named instance.
pub fn corpus() -> Vec<NamedModule> {
    let mut out = acceptance_modules();
    out.extend(abelian_modules());
    out
}

/// Groups of order at most 8 used by the generator.
fn small_groups(abelian_only: bool) -> Vec<FiniteGroup> {
    let z = FiniteGroup::cyclic;
    let mut out: Vec<FiniteGroup> = (1..=8).map(z).collect();
    out.push(FiniteGroup::direct_product(&z(2), &z(2)));
    out.push(FiniteGroup::direct_product(&z(2), &z(4)));
    out.push(FiniteGroup::direct_product(&FiniteGroup::direct_product(&z(2), &z(2)), &z(2)));
    if !abelian_only {
        out.extend([FiniteGroup::symmetric3(), FiniteGroup::dihedral8(), FiniteGroup::quaternion()]);
    }
    out
}

fn random_action(rng: &mut ChaCha8Rng, g: &Arc<FiniteGroup>, keep: &[usize], gamma2: bool) -> GammaAction {
    if !gamma2 {
        return GammaAction::trivial(Arc::new(FiniteGroup::trivial()), g.clone());
    }
    let inv = involutions_preserving(g, keep);
    GammaAction::involution(g.clone(), inv.choose(rng).expect("identity")).expect("involution")
}

/// A random validated module with `|B|, |D| ≤ 8` and `|Γ| ≤ 2`: either a
/// conjugation module or `(B, D, d, 0, η)` with biadditive `η`.
pub fn random_module(rng: &mut ChaCha8Rng) -> ValidatedModule {
    loop {
        let gamma2 = rng.gen_bool(0.5);
        let m = if rng.gen_bool(0.5) { random_conjugation(rng, gamma2) } else { random_biadditive(rng, gamma2) };
        if let Some(m) = m {
            return m;
        }
    }
}

fn random_conjugation(rng: &mut ChaCha8Rng, gamma2: bool) -> Option<ValidatedModule> {
    let g = Arc::new(small_groups(false).choose(rng)?.clone());
    let mut gens = g.commutator_subgroup();
    gens.extend(g.elements().filter(|_| rng.gen_bool(0.3)));
    let n = g.subgroup_generated(&gens);
    g.check_normal(&n).ok()?;
    let act = random_action(rng, &g, &n, gamma2);
    conjugation_module(g, &act, &n).ok()
}

fn random_biadditive(rng: &mut ChaCha8Rng, gamma2: bool) -> Option<ValidatedModule> {
    let groups = small_groups(true);
    let b = Arc::new(groups.choose(rng)?.clone());
    let dg = Arc::new(groups.choose(rng)?.clone());
    let act_b = random_action(rng, &b, &[], gamma2);
    let act_d = random_action(rng, &dg, &[], gamma2);
    let homs: Vec<_> = homomorphisms(&b, &dg).into_iter().filter(|h| act_b.equivariant(h, &act_d)).collect();
    let d = homs.choose(rng)?.clone();
    let ker = d.kernel();
    let da = FiniteAbelianGroup::new(dg.clone()).ok()?;
    let gens = da.generators().to_vec();
    let inv = da.invariants().to_vec();
    let mut eta = vec![vec![0; dg.order()]; dg.order()];
    if rng.gen_bool(0.7) {
        let k = gens.len();
        let mut values = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                let g = num_integer::gcd(inv[i], inv[j]) as usize;
                let ok: Vec<usize> = ker.iter().copied().filter(|&x| g.is_multiple_of(b.element_order(x))).collect();
                values[i * k + j] = *ok.choose(rng)?;
            }
        }
        for x in dg.elements() {
            for y in dg.elements() {
                let (cx, cy) = (da.coords(x), da.coords(y));
                let mut acc = 0;
                for i in 0..k {
                    for j in 0..k {
                        acc = b.mul(acc, b.pow(values[i * k + j], (cx[i] * cy[j]) as usize));
                    }
                }
                eta[x][y] = acc;
            }
        }
    }
    let nb = b.order();
    let theta = vec![(0..nb).collect::<Vec<_>>(); dg.order()];
    BraidedGammaCrossedModule::from_parts(b, dg, d.map, &theta, &eta, act_b.gamma.clone(), &act_b.rows(), &act_d.rows()).ok()?.validated().ok()
}

/// Which table a mutation touched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationSite {
    Eta { x: usize, y: usize },
    Theta { x: usize, b: usize },
    ActB { sigma: usize, b: usize },
    ActD { sigma: usize, x: usize },
}

/// Changes one entry of `η`, `ϑ` or a Γ-action table to a different value;
/// `None` when every table has a single possible value.
pub fn mutate(m: &BraidedGammaCrossedModule, rng: &mut ChaCha8Rng) -> Option<(BraidedGammaCrossedModule, MutationSite)> {
    let (nb, nd, ng) = (m.b.order(), m.dg.order(), m.gamma().order());
    if nb == 1 && (ng == 1 || nd == 1) {
        return None;
    }
    let mut out = m.clone();
    let other = |rng: &mut ChaCha8Rng, n: usize, old: usize| (old + rng.gen_range(1..n)) % n;
    loop {
        match rng.gen_range(0..4) {
            0 if nb > 1 => {
                let (x, y) = (rng.gen_range(0..nd), rng.gen_range(0..nd));
                out.set_eta(x, y, other(rng, nb, m.eta(x, y)));
                return Some((out, MutationSite::Eta { x, y }));
            }
            1 if nb > 1 => {
                let (x, b) = (rng.gen_range(0..nd), rng.gen_range(0..nb));
                out.set_theta(x, b, other(rng, nb, m.theta(x, b)));
                return Some((out, MutationSite::Theta { x, b }));
            }
            2 if nb > 1 && ng > 1 => {
                let (s, b) = (rng.gen_range(1..ng), rng.gen_range(0..nb));
                out.gamma_b = m.gamma_b.with_entry(s, b, other(rng, nb, m.gamma_b.apply(s, b)));
                return Some((out, MutationSite::ActB { sigma: s, b }));
            }
            3 if nd > 1 && ng > 1 => {
                let (s, x) = (rng.gen_range(1..ng), rng.gen_range(0..nd));
                out.gamma_d = m.gamma_d.with_entry(s, x, other(rng, nd, m.gamma_d.apply(s, x)));
                return Some((out, MutationSite::ActD { sigma: s, x }));
            }
            _ => {}
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_validate() {
        let all = corpus();
        assert_eq!(all.len(), 15);
        for nm in &all {
            assert!(nm.module.validate().passed(), "{}", nm.name);
        }
        let d4 = &all[4].module;
        assert_eq!(d4.b.order(), 4);
        assert_eq!(d4.gamma().order(), 1);
        assert!(all[5].module.gamma_d.rows()[1].iter().enumerate().any(|(i, &x)| i != x));
    }

    #[test]
    fn generator_is_seeded() {
        let a: Vec<_> = (0..5).scan(rng(7), |r, _| Some(random_module(r))).collect();
        let b: Vec<_> = (0..5).scan(rng(7), |r, _| Some(random_module(r))).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|m| m.b.order() <= 8 && m.dg.order() <= 8 && m.gamma().order() <= 2));
    }

    #[test]
    fn mutation_changes_one_entry() {
        let m = &corpus()[1].module;
        let (mm, _) = mutate(m, &mut rng(3)).unwrap();
        assert_ne!(&mm, &**m.inner());
    }
}

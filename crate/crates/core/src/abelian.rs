// SPDX-License-Identifier: Apache-2.0

//! Finite abelian groups with an explicit invariant-factor basis, and
//! Γ-modules built on them.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::group::{isomorphism, ActionError, FiniteGroup, GammaAction, GroupError, GroupHom};
use crate::linalg::{smith, IntMatrix};

/// Orders up to which construction re-verifies the decomposition by an
/// isomorphism search.
pub const ISO_CHECK_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    pub group: Arc<FiniteGroup>,
    invariants: Vec<u64>,
    generators: Vec<usize>,
    coords: Vec<Vec<u64>>,
}

impl FiniteAbelianGroup {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self, GroupError> {
        if let Some((a, b)) = group.first_noncommuting() {
            return Err(GroupError::NotAbelian { a, b });
        }
        let g = &*group;
        // Build a triangular relation lattice over greedy generators.
        let mut coord: BTreeMap<usize, Vec<i64>> = BTreeMap::from([(0, vec![])]);
        let mut gens: Vec<usize> = Vec::new();
        let mut relations: Vec<Vec<i64>> = Vec::new();
        while coord.len() < g.order() {
            let s = g.elements().find(|x| !coord.contains_key(x)).expect("group not exhausted");
            let k = gens.len();
            let mut m = 1;
            while !coord.contains_key(&g.pow(s, m)) {
                m += 1;
            }
            let mut rel = coord[&g.pow(s, m)].iter().map(|&c| -c).collect::<Vec<_>>();
            rel.push(m as i64);
            relations.iter_mut().for_each(|r| r.push(0));
            relations.push(rel);
            let old: Vec<(usize, Vec<i64>)> = coord.iter().map(|(&x, v)| (x, v.clone())).collect();
            for (x, v) in &old {
                coord.get_mut(x).expect("present").push(0);
                for c in 1..m {
                    let mut w = v.clone();
                    w.push(c as i64);
                    coord.insert(g.mul(g.pow(s, c), *x), w);
                }
            }
            debug_assert!(coord.values().all(|v| v.len() == k + 1));
            gens.push(s);
        }
        let k = gens.len();
        let (invariants, generators, coords) = if k == 0 {
            (vec![], vec![], vec![vec![]])
        } else {
            let cols: Vec<Vec<BigInt>> = relations.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let sm = smith(&IntMatrix::from_columns(k, &cols));
            let diag: Vec<u64> = sm.diagonal().iter().map(|d| d.to_u64().expect("small invariant")).collect();
            let keep: Vec<usize> = (0..k).filter(|&j| diag[j] != 1).collect();
            let generators = keep
                .iter()
                .map(|&j| {
                    (0..k).fold(0, |acc, i| {
                        let c = sm.u_inv[(i, j)].to_i64().expect("small coefficient");
                        g.mul(acc, signed_pow(g, gens[i], c))
                    })
                })
                .collect();
            let coords = g
                .elements()
                .map(|x| {
                    let v: Vec<BigInt> = coord[&x].iter().map(|&c| BigInt::from(c)).collect();
                    let uv = sm.u.mul_vec(&v);
                    keep.iter()
                        .map(|&j| {
                            let d = BigInt::from(diag[j]);
                            (((&uv[j] % &d) + &d) % &d).to_u64().expect("reduced")
                        })
                        .collect()
                })
                .collect();
            (keep.iter().map(|&j| diag[j]).collect(), generators, coords)
        };
        let out = FiniteAbelianGroup { group, invariants, generators, coords };
        if out.order() <= ISO_CHECK_LIMIT {
            let model = Arc::new(out.model());
            if isomorphism(&out.group, &model).is_none() {
                return Err(GroupError::Shape("invariant decomposition does not reproduce the group".into()));
            }
        }
        Ok(out)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::new(Arc::new(FiniteGroup::cyclic(n))).expect("cyclic groups are abelian")
    }

    /// `ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with lexicographic element indices.
    pub fn from_invariants(ds: &[usize]) -> Self {
        let g = ds.iter().fold(FiniteGroup::trivial(), |acc, &d| FiniteGroup::direct_product(&acc, &FiniteGroup::cyclic(d)));
        Self::new(Arc::new(g)).expect("products of cyclic groups are abelian")
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    /// Generators `g_j` of order `d_j`.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Coordinates of `x` in the invariant basis.
    pub fn coords(&self, x: usize) -> &[u64] {
        &self.coords[x]
    }

    pub fn from_coords(&self, c: &[u64]) -> usize {
        c.iter().zip(&self.generators).fold(0, |acc, (&k, &g)| self.group.mul(acc, self.group.pow(g, k as usize)))
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.group.mul(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.group.inv(a)
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.group.div(a, b)
    }

    pub fn scale(&self, a: usize, k: i64) -> usize {
        signed_pow(&self.group, a, k)
    }

    fn model(&self) -> FiniteGroup {
        self.invariants.iter().fold(FiniteGroup::trivial(), |acc, &d| FiniteGroup::direct_product(&acc, &FiniteGroup::cyclic(d as usize)))
    }
}

fn signed_pow(g: &FiniteGroup, x: usize, k: i64) -> usize {
    let n = g.element_order(x) as i64;
    g.pow(x, k.rem_euclid(n) as usize)
}

/// Invariant factors `d₁ | d₂ | …` of an abelian group.
pub fn abelian_invariants(g: &FiniteGroup) -> Result<Vec<u64>, GroupError> {
    Ok(FiniteAbelianGroup::new(Arc::new(g.clone()))?.invariants)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("action acts on a different group")]
    WrongTarget,
}

/// An abelian group with a Γ-action by automorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaModule {
    pub abelian: Arc<FiniteAbelianGroup>,
    pub action: GammaAction,
}

impl GammaModule {
    pub fn new(action: GammaAction) -> Result<Self, ModuleError> {
        action.check()?;
        let abelian = Arc::new(FiniteAbelianGroup::new(action.target.clone())?);
        Ok(GammaModule { abelian, action })
    }

    pub fn trivial_action(group: Arc<FiniteGroup>, gamma: Arc<FiniteGroup>) -> Result<Self, ModuleError> {
        Self::new(GammaAction::trivial(gamma, group))
    }

    /// ℤ/n with Γ acting trivially.
    pub fn cyclic(n: usize, gamma: Arc<FiniteGroup>) -> Self {
        Self::trivial_action(Arc::new(FiniteGroup::cyclic(n)), gamma).expect("valid")
    }

    /// ℤ/n with Γ = ℤ/2 acting by negation.
    pub fn cyclic_negation(n: usize) -> Self {
        let g = Arc::new(FiniteGroup::cyclic(n));
        let neg: Vec<usize> = g.elements().map(|x| g.inv(x)).collect();
        Self::new(GammaAction::involution(g, &neg).expect("negation is an automorphism")).expect("valid")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.abelian.group
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        &self.action.gamma
    }

    pub fn order(&self) -> usize {
        self.abelian.order()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.abelian.add(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.abelian.neg(a)
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.abelian.sub(a, b)
    }

    #[inline]
    pub fn act(&self, sigma: usize, x: usize) -> usize {
        self.action.apply(sigma, x)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.group().elements()
    }

    /// Whether `h` is a Γ-module map `self → other`.
    pub fn is_module_map(&self, h: &GroupHom, other: &GammaModule) -> bool {
        *h.domain == **self.group() && *h.codomain == **other.group() && h.is_hom() && self.action.equivariant(h, &other.action)
    }
}

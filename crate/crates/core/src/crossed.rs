// SPDX-License-Identifier: Apache-2.0

//! Braided Γ-crossed modules `(B, D, d, ϑ, η)` and their morphisms.
//!
//! `B` is written additively in messages even when it is not abelian, so
//! `b + c` is the group law of `B` in that order.

use std::ops::Deref;
use std::sync::Arc;

use thiserror::Error;

use crate::abelian::{GammaModule, ModuleError};
use crate::cohomology::{h2_brute, CocycleWitness, CohomologyError, SymmetricCochain2};
use crate::group::{homomorphisms, FiniteGroup, GammaAction, GroupError, GroupHom};
use crate::report::{scan, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossedError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("axioms fail:\n{0}")]
    Invalid(Report),
    #[error("subgroup is not normal: conjugating {n} by {g} leaves it")]
    NotNormal { g: usize, n: usize },
    #[error("subgroup does not contain the commutator [{x}, {y}], so the quotient is not abelian")]
    QuotientNotAbelian { x: usize, y: usize },
    #[error("subgroup is not stable under Γ")]
    NotGammaStable,
    #[error("morphisms are not composable")]
    NotComposable,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidedGammaCrossedModule {
    pub b: Arc<FiniteGroup>,
    pub dg: Arc<FiniteGroup>,
    pub d: GroupHom,
    theta: Vec<usize>,
    eta: Vec<usize>,
    pub gamma_b: GammaAction,
    pub gamma_d: GammaAction,
}

impl BraidedGammaCrossedModule {
    /// Assembles the data after shape checks only; see [`Self::validate`].
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        b: Arc<FiniteGroup>,
        dg: Arc<FiniteGroup>,
        d: Vec<usize>,
        theta: &[Vec<usize>],
        eta: &[Vec<usize>],
        gamma: Arc<FiniteGroup>,
        act_b: &[Vec<usize>],
        act_d: &[Vec<usize>],
    ) -> Result<Self, CrossedError> {
        let (nb, nd) = (b.order(), dg.order());
        let bad = |what: &str| Err(CrossedError::ShapeMismatch(what.to_string()));
        if d.len() != nb || d.iter().any(|&x| x >= nd) {
            return bad("d must map each element of B into D");
        }
        if theta.len() != nd || theta.iter().any(|r| r.len() != nb || r.iter().any(|&x| x >= nb)) {
            return bad("theta must be a |D|×|B| table over B");
        }
        if eta.len() != nd || eta.iter().any(|r| r.len() != nd || r.iter().any(|&x| x >= nb)) {
            return bad("eta must be a |D|×|D| table over B");
        }
        let gamma_b = GammaAction::new_unchecked(gamma.clone(), b.clone(), act_b).map_err(|_| CrossedError::ShapeMismatch("actB must be a |Γ|×|B| table".into()))?;
        let gamma_d = GammaAction::new_unchecked(gamma, dg.clone(), act_d).map_err(|_| CrossedError::ShapeMismatch("actD must be a |Γ|×|D| table".into()))?;
        let d = GroupHom::new_unchecked(b.clone(), dg.clone(), d);
        Ok(BraidedGammaCrossedModule { b, dg, d, theta: theta.concat(), eta: eta.concat(), gamma_b, gamma_d })
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        &self.gamma_b.gamma
    }

    #[inline]
    pub fn theta(&self, x: usize, b: usize) -> usize {
        self.theta[x * self.b.order() + b]
    }

    #[inline]
    pub fn eta(&self, x: usize, y: usize) -> usize {
        self.eta[x * self.dg.order() + y]
    }

    pub fn theta_rows(&self) -> Vec<Vec<usize>> {
        self.theta.chunks(self.b.order()).map(<[usize]>::to_vec).collect()
    }

    pub fn eta_rows(&self) -> Vec<Vec<usize>> {
        self.eta.chunks(self.dg.order()).map(<[usize]>::to_vec).collect()
    }

    pub fn set_theta(&mut self, x: usize, b: usize, v: usize) {
        let n = self.b.order();
        self.theta[x * n + b] = v;
    }

    pub fn set_eta(&mut self, x: usize, y: usize, v: usize) {
        let n = self.dg.order();
        self.eta[x * n + y] = v;
    }

    /// Every axiom, with all failing tuples counted.
    pub fn validate(&self) -> Report {
        let (b, dg, gm) = (&*self.b, &*self.dg, &**self.gamma());
        let (nb, nd, ng) = (b.order(), dg.order(), gm.order());
        let d = |x| self.d.apply(x);
        let th = |x, c| self.theta(x, c);
        let eta = |x, y| self.eta(x, y);
        let sb = |s, x| self.gamma_b.apply(s, x);
        let sd = |s, x| self.gamma_d.apply(s, x);
        let mut r = Report::new();
        r.record("d homomorphism", scan(&[nb, nb], |t| d(b.mul(t[0], t[1])) != dg.mul(d(t[0]), d(t[1]))));
        r.record("theta automorphisms", scan(&[nd, nb, nb], |t| th(t[0], b.mul(t[1], t[2])) != b.mul(th(t[0], t[1]), th(t[0], t[2]))));
        r.record(
            "theta bijective",
            scan(&[nd], |t| {
                let mut seen = vec![false; nb];
                b.elements().for_each(|c| seen[th(t[0], c)] = true);
                seen.contains(&false)
            }),
        );
        r.record("theta action", scan(&[nd, nd, nb], |t| th(dg.mul(t[0], t[1]), t[2]) != th(t[0], th(t[1], t[2]))));
        r.record("Gamma action on B", action_failures(&self.gamma_b));
        r.record("Gamma action on D", action_failures(&self.gamma_d));
        r.record("d equivariant", scan(&[ng, nb], |t| d(sb(t[0], t[1])) != sd(t[0], d(t[1]))));
        r.record("C1", scan(&[nb, nb], |t| th(d(t[0]), t[1]) != b.conj(t[0], t[1])));
        r.record("C2", scan(&[nd, nb], |t| d(th(t[0], t[1])) != dg.conj(t[0], d(t[1]))));
        r.record(
            "C3",
            scan(&[nd, nd, nd], |t| {
                let (x, y, z) = (t[0], t[1], t[2]);
                eta(x, dg.mul(y, z)) != b.mul(eta(x, y), th(y, eta(x, z)))
            }),
        );
        r.record(
            "C4",
            scan(&[nd, nd, nd], |t| {
                let (x, y, z) = (t[0], t[1], t[2]);
                eta(dg.mul(x, y), z) != b.mul(th(x, eta(y, z)), eta(x, z))
            }),
        );
        r.record("C5", scan(&[nd, nd], |t| d(eta(t[0], t[1])) != dg.commutator(t[0], t[1])));
        r.record("C6", scan(&[nb, nd], |t| b.mul(eta(d(t[0]), t[1]), th(t[1], t[0])) != t[0]));
        r.record("C7", scan(&[nd, nb], |t| b.mul(eta(t[0], d(t[1])), t[1]) != th(t[0], t[1])));
        r.record("Gamma1", scan(&[ng, nd, nb], |t| sb(t[0], th(t[1], t[2])) != th(sd(t[0], t[1]), sb(t[0], t[2]))));
        r.record("Gamma2", scan(&[ng, nd, nd], |t| sb(t[0], eta(t[1], t[2])) != eta(sd(t[0], t[1]), sd(t[0], t[2]))));
        r
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    pub fn validated(self) -> Result<ValidatedModule, CrossedError> {
        let r = self.validate();
        if r.passed() {
            Ok(ValidatedModule(Arc::new(self)))
        } else {
            Err(CrossedError::Invalid(r))
        }
    }

    /// `η(x,y) + η(y,x) = 0` everywhere.
    pub fn is_symmetric(&self) -> bool {
        self.dg.elements().all(|x| self.dg.elements().all(|y| self.b.mul(self.eta(x, y), self.eta(y, x)) == 0))
    }

    /// `B`, `D` abelian, `ϑ` trivial and `η ≡ 0`.
    pub fn is_abelian(&self) -> bool {
        self.b.is_abelian()
            && self.dg.is_abelian()
            && self.eta.iter().all(|&v| v == 0)
            && self.dg.elements().all(|x| self.b.elements().all(|c| self.theta(x, c) == c))
    }
}

fn action_failures(a: &GammaAction) -> Vec<Vec<usize>> {
    let (g, t) = (&*a.gamma, &*a.target);
    let mut out = scan(&[g.order(), t.order(), t.order()], |w| a.apply(w[0], t.mul(w[1], w[2])) != t.mul(a.apply(w[0], w[1]), a.apply(w[0], w[2])));
    out.extend(scan(&[g.order(), g.order(), t.order()], |w| a.apply(g.mul(w[0], w[1]), w[2]) != a.apply(w[0], a.apply(w[1], w[2]))));
    out.extend(scan(&[t.order()], |w| a.apply(0, w[0]) != w[0]).into_iter().map(|w| vec![0, 0, w[0]]));
    out.sort();
    out
}

/// A module whose axioms have all been checked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValidatedModule(Arc<BraidedGammaCrossedModule>);

impl Deref for ValidatedModule {
    type Target = BraidedGammaCrossedModule;
    fn deref(&self) -> &BraidedGammaCrossedModule {
        &self.0
    }
}

impl ValidatedModule {
    pub fn inner(&self) -> &Arc<BraidedGammaCrossedModule> {
        &self.0
    }

    /// Consequences of the axioms, recomputed rather than assumed.
    pub fn derived_checks(&self) -> Report {
        let (b, dg) = (&*self.b, &*self.dg);
        let (nb, nd) = (b.order(), dg.order());
        let ker = self.d.kernel();
        let mut img = vec![false; nd];
        self.d.image().into_iter().for_each(|x| img[x] = true);
        let mut r = Report::new();
        r.record("eta normalized", scan(&[nd], |t| self.eta(t[0], 0) != 0 || self.eta(0, t[0]) != 0));
        r.record("Ker d central", scan(&[ker.len(), nb], |t| !b.mul(ker[t[0]], t[1]).eq(&b.mul(t[1], ker[t[0]]))));
        r.record("Coker d abelian", scan(&[nd, nd], |t| !img[dg.commutator(t[0], t[1])]));
        r.record("D acts trivially on Ker d", scan(&[nd, ker.len()], |t| self.theta(t[0], ker[t[1]]) != ker[t[1]]));
        r
    }

    /// `π₀ = Coker d` with its induced Γ-action.
    pub fn pi0(&self) -> Pi0 {
        let (q, proj) = self.dg.quotient(&self.d.image()).expect("image of d is normal");
        let q = Arc::new(q);
        let proj = GroupHom::new_unchecked(self.dg.clone(), q.clone(), proj.map);
        let action = self.gamma_d.on_quotient(&proj);
        Pi0 { module: Arc::new(GammaModule::new(action).expect("Coker d is abelian")), proj }
    }

    /// `π₁ = Ker d` with its induced Γ-action.
    pub fn pi1(&self) -> Pi1 {
        let (k, incl) = self.b.subgroup_as_group(&self.d.kernel()).expect("kernel is a subgroup");
        let k = Arc::new(k);
        let incl = GroupHom::new_unchecked(k.clone(), self.b.clone(), incl.map);
        let action = self.gamma_b.on_subgroup(&incl);
        Pi1 { module: Arc::new(GammaModule::new(action).expect("Ker d is abelian")), incl }
    }
}

#[derive(Debug, Clone)]
pub struct Pi0 {
    pub module: Arc<GammaModule>,
    pub proj: GroupHom,
}

impl Pi0 {
    /// Least element of `D` in each class.
    pub fn representatives(&self) -> Vec<usize> {
        let mut rep = vec![usize::MAX; self.module.order()];
        for x in (0..self.proj.domain.order()).rev() {
            rep[self.proj.apply(x)] = x;
        }
        rep
    }
}

#[derive(Debug, Clone)]
pub struct Pi1 {
    pub module: Arc<GammaModule>,
    pub incl: GroupHom,
}

impl Pi1 {
    /// Position of `b ∈ Ker d` in `π₁`.
    pub fn index_of(&self, b: usize) -> Option<usize> {
        self.incl.map.binary_search(&b).ok()
    }
}

/// `(N, G, ι, conjugation, commutator)` with the Γ-actions inherited from `G`.
pub fn conjugation_module(g: Arc<FiniteGroup>, action: &GammaAction, n: &[usize]) -> Result<ValidatedModule, CrossedError> {
    if *action.target != *g {
        return Err(CrossedError::ShapeMismatch("action does not act on G".into()));
    }
    g.subgroup_mask(n)?;
    match g.check_normal(n) {
        Err(GroupError::NotNormal { g, n }) => return Err(CrossedError::NotNormal { g, n }),
        Err(e) => return Err(e.into()),
        Ok(()) => {}
    }
    let mut mask = vec![false; g.order()];
    n.iter().for_each(|&x| mask[x] = true);
    for x in g.elements() {
        for y in g.elements() {
            if !mask[g.commutator(x, y)] {
                return Err(CrossedError::QuotientNotAbelian { x, y });
            }
        }
    }
    if !action.preserves(n) {
        return Err(CrossedError::NotGammaStable);
    }
    let (bg, incl) = g.subgroup_as_group(n)?;
    let bg = Arc::new(bg);
    let pos = |x: usize| incl.map.binary_search(&x).expect("member of N");
    let theta: Vec<Vec<usize>> = g.elements().map(|x| incl.map.iter().map(|&c| pos(g.conj(x, c))).collect()).collect();
    let eta: Vec<Vec<usize>> = g.elements().map(|x| g.elements().map(|y| pos(g.commutator(x, y))).collect()).collect();
    let incl_b = GroupHom::new_unchecked(bg.clone(), g.clone(), incl.map.clone());
    let act_b = action.on_subgroup(&incl_b);
    let m = BraidedGammaCrossedModule::from_parts(
        bg,
        g.clone(),
        incl.map.clone(),
        &theta,
        &eta,
        action.gamma.clone(),
        &act_b.rows(),
        &action.rows(),
    )?;
    m.validated()
}

/// `(f₁, f₀, φ)` with `φ` a 2-cocycle on `Coker d` with values in `Ker d′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedMorphism {
    pub f1: GroupHom,
    pub f0: GroupHom,
    pub phi: SymmetricCochain2,
}

impl CrossedMorphism {
    pub fn identity(m: &ValidatedModule) -> Self {
        let phi = SymmetricCochain2::zero(m.pi0().module, m.pi1().module).expect("same Γ");
        CrossedMorphism { f1: GroupHom::identity(m.b.clone()), f0: GroupHom::identity(m.dg.clone()), phi }
    }
}

fn witness_tuple(w: &CocycleWitness) -> Vec<usize> {
    match *w {
        CocycleWitness::NotNormalized { x, y } => vec![0, x, y],
        CocycleWitness::Grade { x, sigma, tau } => vec![1, x, sigma, tau],
        CocycleWitness::Mixed { x, y, sigma } => vec![2, x, y, sigma],
        CocycleWitness::Assoc { x, y, z } => vec![3, x, y, z],
        CocycleWitness::Symmetry { x, y } => vec![4, x, y],
    }
}

pub fn validate_morphism(f: &CrossedMorphism, m: &ValidatedModule, m2: &ValidatedModule) -> Report {
    let mut r = Report::new();
    let shapes = *f.f1.domain == *m.b && *f.f1.codomain == *m2.b && *f.f0.domain == *m.dg && *f.f0.codomain == *m2.dg;
    r.record_bool("shapes", shapes);
    if !shapes {
        return r;
    }
    let (nb, nd, ng) = (m.b.order(), m.dg.order(), m.gamma().order());
    let (f1, f0) = (|x| f.f1.apply(x), |x| f.f0.apply(x));
    r.record("f1 homomorphism", scan(&[nb, nb], |t| f1(m.b.mul(t[0], t[1])) != m2.b.mul(f1(t[0]), f1(t[1]))));
    r.record("f0 homomorphism", scan(&[nd, nd], |t| f0(m.dg.mul(t[0], t[1])) != m2.dg.mul(f0(t[0]), f0(t[1]))));
    r.record("H1", scan(&[nb], |t| f0(m.d.apply(t[0])) != m2.d.apply(f1(t[0]))));
    r.record("H2", scan(&[nd, nb], |t| f1(m.theta(t[0], t[1])) != m2.theta(f0(t[0]), f1(t[1]))));
    r.record("H3", scan(&[nd, nd], |t| f1(m.eta(t[0], t[1])) != m2.eta(f0(t[0]), f0(t[1]))));
    let same_gamma = m.gamma() == m2.gamma();
    r.record_bool("same Gamma", same_gamma);
    if same_gamma {
        r.record("f1 equivariant", scan(&[ng, nb], |t| f1(m.gamma_b.apply(t[0], t[1])) != m2.gamma_b.apply(t[0], f1(t[1]))));
        r.record("f0 equivariant", scan(&[ng, nd], |t| f0(m.gamma_d.apply(t[0], t[1])) != m2.gamma_d.apply(t[0], f0(t[1]))));
    }
    let (p0, p1) = (m.pi0(), m2.pi1());
    let phi_shape = *f.phi.q == *p0.module && *f.phi.b == *p1.module;
    r.record_bool("phi domain", phi_shape);
    if phi_shape {
        r.record("phi cocycle", f.phi.cocycle_failure().map(|w| witness_tuple(&w)));
    }
    r
}

/// The map `Coker d → Coker d′` induced by `f₀`.
pub fn induced_on_pi0(f0: &GroupHom, m: &ValidatedModule, m2: &ValidatedModule) -> GroupHom {
    let (p, p2) = (m.pi0(), m2.pi0());
    let reps = p.representatives();
    let map = reps.iter().map(|&x| p2.proj.apply(f0.apply(x))).collect();
    GroupHom::new_unchecked(p.module.group().clone(), p2.module.group().clone(), map)
}

/// The map `Ker d → Ker d′` induced by `f₁`.
pub fn induced_on_pi1(f1: &GroupHom, m: &ValidatedModule, m2: &ValidatedModule) -> GroupHom {
    let (k, k2) = (m.pi1(), m2.pi1());
    let map = k.incl.map.iter().map(|&b| k2.index_of(f1.apply(b)).expect("f1 preserves kernels")).collect();
    GroupHom::new_unchecked(k.module.group().clone(), k2.module.group().clone(), map)
}

/// `(f₁′f₁, f₀′f₀, (f₁′)_*φ + (f₀)^*φ′)`.
pub fn compose_morphisms(
    g: &CrossedMorphism,
    f: &CrossedMorphism,
    m: &ValidatedModule,
    m2: &ValidatedModule,
    m3: &ValidatedModule,
) -> Result<CrossedMorphism, CrossedError> {
    if *f.f1.codomain != *g.f1.domain || *f.f0.codomain != *g.f0.domain || *f.f1.domain != *m.b || *g.f1.codomain != *m3.b {
        return Err(CrossedError::NotComposable);
    }
    let push = f.phi.pushforward(&induced_on_pi1(&g.f1, m2, m3), m3.pi1().module);
    let pull = g.phi.pullback(&induced_on_pi0(&f.f0, m, m2), m.pi0().module);
    Ok(CrossedMorphism { f1: f.f1.then(&g.f1), f0: f.f0.then(&g.f0), phi: push.add(&pull) })
}

/// Every morphism `ℳ → ℳ′` with the same Γ: equivariant `f₁`, `f₀` satisfying
/// H1–H3, paired with every normalized symmetric 2-cocycle `φ`.
pub fn enumerate_morphisms(m: &ValidatedModule, m2: &ValidatedModule, guard: u128) -> Result<Vec<CrossedMorphism>, CohomologyError> {
    if m.gamma() != m2.gamma() {
        return Err(CohomologyError::GammaMismatch);
    }
    let cocycles = h2_brute(&m.pi0().module, &m2.pi1().module, guard)?.cocycles;
    let f0s: Vec<GroupHom> = homomorphisms(&m.dg, &m2.dg).into_iter().filter(|h| m.gamma_d.equivariant(h, &m2.gamma_d)).collect();
    let f1s: Vec<GroupHom> = homomorphisms(&m.b, &m2.b).into_iter().filter(|h| m.gamma_b.equivariant(h, &m2.gamma_b)).collect();
    let mut out = Vec::new();
    for f1 in &f1s {
        for f0 in &f0s {
            let ok = m.b.elements().all(|b| f0.apply(m.d.apply(b)) == m2.d.apply(f1.apply(b)))
                && m.dg.elements().all(|x| m.b.elements().all(|b| f1.apply(m.theta(x, b)) == m2.theta(f0.apply(x), f1.apply(b))))
                && m.dg.elements().all(|x| m.dg.elements().all(|y| f1.apply(m.eta(x, y)) == m2.eta(f0.apply(x), f0.apply(y))));
            if ok {
                out.extend(cocycles.iter().map(|phi| CrossedMorphism { f1: f1.clone(), f0: f0.clone(), phi: phi.clone() }));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial_gamma() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::trivial())
    }

    fn degenerate(eta11: usize, d1: usize) -> BraidedGammaCrossedModule {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        BraidedGammaCrossedModule::from_parts(
            z2.clone(),
            z2.clone(),
            vec![0, d1],
            &[vec![0, 1], vec![0, 1]],
            &[vec![0, 0], vec![0, eta11]],
            trivial_gamma(),
            &[vec![0, 1]],
            &[vec![0, 1]],
        )
        .unwrap()
    }

    #[test]
    fn degenerate_module_passes() {
        let m = degenerate(0, 0);
        assert!(m.validate().passed());
        assert!(m.is_symmetric());
        assert!(m.is_abelian());
        let v = m.validated().unwrap();
        assert_eq!(v.pi0().module.order(), 2);
        assert_eq!(v.pi1().module.order(), 2);
        assert!(v.derived_checks().passed());
    }

    #[test]
    fn c5_failure_is_reported() {
        let r = degenerate(1, 1).validate();
        let c5 = r.get("C5").unwrap();
        assert_eq!(c5.witnesses[0], vec![1, 1]);
    }

    #[test]
    fn conjugation_modules() {
        let q8 = Arc::new(FiniteGroup::quaternion());
        let gamma = trivial_gamma();
        let triv = GammaAction::trivial(gamma, q8.clone());
        // ⟨i⟩: closure of the first element of order 4
        let i = q8.elements().find(|&x| q8.element_order(x) == 4).unwrap();
        let n = q8.subgroup_generated(&[i]);
        let m = conjugation_module(q8.clone(), &triv, &n).unwrap();
        assert!(!m.is_abelian());
        assert_eq!(m.pi0().module.abelian.invariants(), &[2]);
        assert_eq!(m.pi1().module.order(), 1);
        assert!(m.derived_checks().passed());

        let s3 = Arc::new(FiniteGroup::symmetric3());
        let triv = GammaAction::trivial(trivial_gamma(), s3.clone());
        let a3 = s3.commutator_subgroup();
        let m = conjugation_module(s3.clone(), &triv, &a3).unwrap();
        assert!(m.is_symmetric());
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        assert!(matches!(conjugation_module(s3.clone(), &triv, &[0, t]), Err(CrossedError::NotNormal { .. })));
    }

    #[test]
    fn abelian_with_negation() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let act = GammaAction::involution(z4.clone(), &[0, 3, 2, 1]).unwrap();
        let m = conjugation_module(z4, &act, &[0, 2]).unwrap();
        assert!(m.eta_rows().iter().flatten().all(|&v| v == 0));
    }

    #[test]
    fn identity_morphism_and_composition() {
        let m = degenerate(0, 0).validated().unwrap();
        let id = CrossedMorphism::identity(&m);
        assert!(validate_morphism(&id, &m, &m).passed());
        let mut f = id.clone();
        f.phi.set_pair(1, 1, 1);
        assert!(validate_morphism(&f, &m, &m).passed());
        assert_eq!(compose_morphisms(&id, &f, &m, &m, &m).unwrap(), f);
        assert_eq!(compose_morphisms(&f, &id, &m, &m, &m).unwrap(), f);
        // φ″ = φ + φ′ here
        let ff = compose_morphisms(&f, &f, &m, &m, &m).unwrap();
        assert!(ff.phi.is_zero());
    }

    #[test]
    fn enumerated_morphisms_validate() {
        let m = degenerate(0, 0).validated().unwrap();
        let all = enumerate_morphisms(&m, &m, 1 << 20).unwrap();
        // f₁, f₀ ∈ {0, id} and two cocycles on ℤ/2 with values in ℤ/2
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|f| validate_morphism(f, &m, &m).passed()));
        assert!(all.contains(&CrossedMorphism::identity(&m)));
    }

    #[test]
    fn h1_failure() {
        let m = degenerate(0, 0).validated().unwrap();
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let m2 = BraidedGammaCrossedModule::from_parts(
            z2.clone(),
            z2.clone(),
            vec![0, 1],
            &[vec![0, 1], vec![0, 1]],
            &[vec![0, 0], vec![0, 0]],
            trivial_gamma(),
            &[vec![0, 1]],
            &[vec![0, 1]],
        )
        .unwrap()
        .validated()
        .unwrap();
        let f = CrossedMorphism {
            f1: GroupHom::identity(z2.clone()),
            f0: GroupHom::identity(z2.clone()),
            phi: SymmetricCochain2::zero(m.pi0().module, m2.pi1().module).unwrap(),
        };
        let r = validate_morphism(&f, &m, &m2);
        assert_eq!(r.get("H1").unwrap().witnesses, vec![vec![1]]);
    }
}

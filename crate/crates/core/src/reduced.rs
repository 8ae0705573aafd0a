// SPDX-License-Identifier: Apache-2.0

//! The reduced model `∫_Γ(Coker d, Ker d, h)` of `𝔾_ℳ` for an abelian
//! Γ-crossed module, with the comparison functor into `𝔾_ℳ`.
//!
//! With sections `s_r` (least representatives), `s_r + s_t = d k(r,t) + s_{r+t}`
//! and `σ s_r = d m(r,σ) + s_{σr}`, the 3-cochain is
//!
//! ```text
//! h(r,τ,σ)  = τ m(r,σ) + m(σr,τ) − m(r,τσ)
//! h(r,r′,σ) = m(r,σ) + m(r′,σ) + k(σr,σr′) − σ k(r,r′) − m(r+r′,σ)
//! h(r,s,t)  = k(s,t) + k(r,s+t) − k(r,s) − k(r+s,t)
//! h(r,s)    = k(s,r) − k(r,s)
//! ```

use thiserror::Error;

use crate::cohomology::Cochain3;
use crate::crossed::ValidatedModule;
use crate::functor::GradedFunctor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("the crossed module is not abelian")]
    NotAbelian,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedModel {
    pub h: Cochain3,
    /// `s_r ∈ D`
    pub sections: Vec<usize>,
    /// `k(r,t) ∈ B`, row-major over `Coker d`
    pub k: Vec<usize>,
    /// `m(r,σ) ∈ B`
    pub m: Vec<usize>,
    /// `∫_Γ(Coker d, Ker d, h) → 𝔾_ℳ`
    pub comparison: GradedFunctor,
}

pub fn reduced_model(module: &ValidatedModule) -> Result<ReducedModel, ReductionError> {
    if !module.is_abelian() {
        return Err(ReductionError::NotAbelian);
    }
    let (p0, p1) = (module.pi0(), module.pi1());
    let (q, n) = (p0.module.clone(), p1.module.clone());
    let (b, dg) = (&*module.b, &*module.dg);
    let (nq, ng, nd, nb) = (q.order(), q.gamma().order(), dg.order(), b.order());
    let sections = p0.representatives();
    let lift = |x: usize| (0..nb).find(|&c| module.d.apply(c) == x).expect("x lies in Im d");
    let k: Vec<usize> = (0..nq * nq)
        .map(|i| {
            let (r, t) = (i / nq, i % nq);
            lift(dg.div(dg.mul(sections[r], sections[t]), sections[q.add(r, t)]))
        })
        .collect();
    let m: Vec<usize> = (0..nq * ng)
        .map(|i| {
            let (r, s) = (i / ng, i % ng);
            lift(dg.div(module.gamma_d.apply(s, sections[r]), sections[q.act(s, r)]))
        })
        .collect();
    let kk = |r: usize, t: usize| k[r * nq + t];
    let mm = |r: usize, s: usize| m[r * ng + s];
    let act = |s: usize, x: usize| module.gamma_b.apply(s, x);
    let add = |x: usize, y: usize| b.mul(x, y);
    let sub = |x: usize, y: usize| b.div(x, y);
    let gm = &**q.gamma();
    let to_n = |x: usize| p1.index_of(x).expect("value lies in Ker d");
    let mut h = Cochain3::zero(q.clone(), n.clone()).expect("same Γ");
    for r in 0..nq {
        for t in 0..ng {
            for s in 0..ng {
                let v = sub(add(act(t, mm(r, s)), mm(q.act(s, r), t)), mm(r, gm.mul(t, s)));
                h.set_comp(r, t, s, to_n(v));
            }
        }
        for r2 in 0..nq {
            for s in 0..ng {
                let v = sub(sub(add(add(mm(r, s), mm(r2, s)), kk(q.act(s, r), q.act(s, r2))), act(s, kk(r, r2))), mm(q.add(r, r2), s));
                h.set_tensor(r, r2, s, to_n(v));
            }
            h.set_braid(r, r2, to_n(sub(kk(r2, r), kk(r, r2))));
            for t in 0..nq {
                let v = sub(add(kk(r2, t), kk(r, q.add(r2, t))), add(kk(r, r2), kk(q.add(r, r2), t)));
                h.set_assoc(r, r2, t, to_n(v));
            }
        }
    }
    let idx = |s: usize, x: usize, p: usize| (s * nd + x) * nb + p;
    let mut morphisms = Vec::with_capacity(ng * nq * n.order());
    for s in 0..ng {
        for r in 0..nq {
            for a in 0..n.order() {
                morphisms.push(idx(s, sections[r], add(p1.incl.apply(a), mm(r, s))));
            }
        }
    }
    let tilde = (0..nq * nq).map(|i| idx(0, dg.mul(sections[i / nq], sections[i % nq]), k[i])).collect();
    let comparison = GradedFunctor { objects: sections.clone(), morphisms, tilde, unit: idx(0, 0, 0) };
    Ok(ReducedModel { h, sections, k, m, comparison })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catgroup::{build_catgroup, build_reduced, check_axioms};
    use crate::crossed::BraidedGammaCrossedModule;
    use crate::functor::check_graded_functor;
    use crate::group::FiniteGroup;

    fn abelian(b: usize, dg: usize, d: Vec<usize>, act_b: Vec<usize>, act_d: Vec<usize>) -> ValidatedModule {
        let (bg, dgg) = (Arc::new(FiniteGroup::cyclic(b)), Arc::new(FiniteGroup::cyclic(dg)));
        BraidedGammaCrossedModule::from_parts(
            bg,
            dgg,
            d,
            &vec![(0..b).collect(); dg],
            &vec![vec![0; dg]; dg],
            Arc::new(FiniteGroup::cyclic(2)),
            &[(0..b).collect(), act_b],
            &[(0..dg).collect(), act_d],
        )
        .unwrap()
        .validated()
        .unwrap()
    }

    #[test]
    fn reduction_is_coherent() {
        let cases = [
            // ℤ/4 →(·2) ℤ/4 under negation
            abelian(4, 4, vec![0, 2, 0, 2], vec![0, 3, 2, 1], vec![0, 3, 2, 1]),
            // ℤ/2 → ℤ/4, 1 ↦ 2, trivial Γ
            abelian(2, 4, vec![0, 2], vec![0, 1], vec![0, 1, 2, 3]),
            // ℤ/4 → ℤ/8, 1 ↦ 2, negation
            abelian(4, 8, vec![0, 2, 4, 6], vec![0, 3, 2, 1], vec![0, 7, 6, 5, 4, 3, 2, 1]),
        ];
        for module in cases {
            let red = reduced_model(&module).unwrap();
            let g = build_reduced(&red.h).unwrap();
            let r = check_axioms(&g);
            assert!(r.passed(), "{r}");
            let r = check_graded_functor(&red.comparison, &g, &build_catgroup(&module));
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn sections_and_lifts() {
        // ℤ/2 → ℤ/4: s = {0,1} and 1 + 1 = d(1)
        let module = abelian(2, 4, vec![0, 2], vec![0, 1], vec![0, 1, 2, 3]);
        let red = reduced_model(&module).unwrap();
        assert_eq!(red.sections, vec![0, 1]);
        assert_eq!(red.k, vec![0, 0, 0, 1]);
        // D abelian: both lifts of s_r + s_t coincide, so the braid part is zero
        assert!((0..2).all(|r| (0..2).all(|t| red.h.braid(r, t) == 0)));
    }
}

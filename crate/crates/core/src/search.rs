// SPDX-License-Identifier: Apache-2.0

//! Exhaustive enumeration of graded symmetric monoidal functors of a given
//! type out of a reduced category `∫_Γ(M, N, h)`, and their homotopy classes.
//!
//! Functors are enumerated in normalized form: `F(0) = 0`, `F_* = id`,
//! `F̃` trivial when an argument is the unit, and `F` on the unit functor
//! equal to the target's unit functor. Every functor is homotopic to one of
//! these through a family with `θ_0 = id`.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::abelian::GammaModule;
use crate::catgroup::{build_reduced, discrete, CatGroupError, GradedCatGroup};
use crate::cohomology::Cochain3;
use crate::crossed::ValidatedModule;
use crate::functor::{check_graded_functor, transport, GradedFunctor};
use crate::group::GroupHom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search space of {candidates} candidates exceeds the guard {guard}")]
    SearchSpaceTooLarge { candidates: u128, guard: u128 },
    #[error("functor type does not fit: {0}")]
    WrongType(String),
    #[error(transparent)]
    CatGroup(#[from] CatGroupError),
}

/// A target category together with its grade-1 automorphisms indexed by `π₁`:
/// the automorphism of `y` attached to `k` has payload `aut_payload[k]`.
#[derive(Debug, Clone)]
pub struct SearchTarget {
    pub cat: GradedCatGroup,
    pub pi1: Arc<GammaModule>,
    pub aut_payload: Vec<usize>,
}

impl SearchTarget {
    /// `∫_Γ(M′, N′, h′)`, where `π₁ = N′`.
    pub fn reduced(h: &Cochain3) -> Result<Self, SearchError> {
        Ok(SearchTarget { cat: build_reduced(h)?, pi1: h.n.clone(), aut_payload: h.n.elements().collect() })
    }

    /// `𝔾_ℳ`, where `π₁ = Ker d`.
    pub fn built(m: &ValidatedModule) -> Self {
        let p1 = m.pi1();
        SearchTarget { cat: crate::catgroup::build_catgroup(m), pi1: p1.module, aut_payload: p1.incl.map }
    }

    #[inline]
    fn aut(&self, y: usize, k: usize) -> usize {
        self.cat.index(0, y, self.aut_payload[k])
    }
}

/// Type `(φ, f)`: the object map realizing `φ` and `f: N → π₁` as a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorType {
    pub objects: Vec<usize>,
    pub f: Vec<usize>,
}

impl FunctorType {
    /// Object map `F(u) =` least representative of `ψ(u)` in `D`, with `f = 0`.
    pub fn over_built(m: &ValidatedModule, psi: &GroupHom, n: usize) -> Self {
        let reps = m.pi0().representatives();
        FunctorType { objects: psi.map.iter().map(|&c| reps[c]).collect(), f: vec![0; n] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub source: GradedCatGroup,
    pub functors: Vec<GradedFunctor>,
    /// Candidates that passed the pruning identities but failed the full
    /// coherence check.
    pub rejected: usize,
}

#[derive(Clone, Copy)]
enum Inst {
    Comp(usize, usize, usize),
    Nat(usize, usize, usize),
    Assoc(usize, usize, usize),
    Braid(usize, usize),
}

struct Problem<'a> {
    src: GradedCatGroup,
    tgt: &'a SearchTarget,
    ty: &'a FunctorType,
    nm: usize,
    ng: usize,
    fixed: Vec<Option<usize>>,
    free: Vec<usize>,
    cands: Vec<Vec<usize>>,
    /// instances to test once the free variable at each position is set
    at: Vec<Vec<Inst>>,
    upfront: Vec<Inst>,
}

impl<'a> Problem<'a> {
    fn mu(&self, r: usize, s: usize) -> usize {
        r * self.ng + s
    }

    fn tl(&self, r: usize, s: usize) -> usize {
        self.nm * self.ng + r * self.nm + s
    }

    fn fmor(&self, vals: &[usize], a: usize) -> Option<usize> {
        let am = self.src.morphism(a);
        let k = *self.ty.f.get(am.payload)?;
        self.tgt.cat.comp(self.tgt.aut(self.ty.objects[am.tgt], k), vals[self.mu(am.src, am.grade)])
    }

    fn holds(&self, vals: &[usize], inst: Inst) -> bool {
        let (g, h) = (&self.src, &self.tgt.cat);
        match inst {
            Inst::Comp(r, s, t) => {
                let sr = g.tgt(g.index(s, r, 0));
                let c = g.comp(g.index(t, sr, 0), g.index(s, r, 0));
                let lhs = c.and_then(|c| self.fmor(vals, c));
                lhs.is_some() && lhs == h.comp(vals[self.mu(sr, t)], vals[self.mu(r, s)])
            }
            Inst::Nat(r, q, s) => {
                let (a, b) = (g.index(s, r, 0), g.index(s, q, 0));
                let lhs = h.chain(&[h.tensor(vals[self.mu(r, s)], vals[self.mu(q, s)]), Some(vals[self.tl(g.tgt(a), g.tgt(b))])]);
                let rhs = h.chain(&[Some(vals[self.tl(r, q)]), g.tensor(a, b).and_then(|ab| self.fmor(vals, ab))]);
                lhs.is_some() && lhs == rhs
            }
            Inst::Assoc(r, s, t) => {
                let fo = |x: usize| self.ty.objects[x];
                let ot = |x, y| g.obj_tensor(x, y);
                let lhs = h.chain(&[
                    h.tensor(vals[self.tl(r, s)], h.id(fo(t))),
                    Some(vals[self.tl(ot(r, s), t)]),
                    self.fmor(vals, g.assoc(r, s, t)),
                ]);
                let rhs = h.chain(&[
                    Some(h.assoc(fo(r), fo(s), fo(t))),
                    h.tensor(h.id(fo(r)), vals[self.tl(s, t)]),
                    Some(vals[self.tl(r, ot(s, t))]),
                ]);
                lhs.is_some() && lhs == rhs
            }
            Inst::Braid(r, s) => {
                let lhs = h.comp(vals[self.tl(s, r)], h.braid(self.ty.objects[r], self.ty.objects[s]));
                let rhs = self.fmor(vals, g.braid(r, s)).and_then(|fc| h.comp(fc, vals[self.tl(r, s)]));
                lhs.is_some() && lhs == rhs
            }
        }
    }

    fn slots(&self, inst: Inst) -> Vec<usize> {
        let g = &self.src;
        let ot = |x, y| g.obj_tensor(x, y);
        let act = |s, r| g.tgt(g.index(s, r, 0));
        match inst {
            Inst::Comp(r, s, t) => vec![self.mu(r, s), self.mu(act(s, r), t), self.mu(r, g.gamma.mul(t, s))],
            Inst::Nat(r, q, s) => vec![self.mu(r, s), self.mu(q, s), self.tl(act(s, r), act(s, q)), self.tl(r, q), self.mu(ot(r, q), s)],
            Inst::Assoc(r, s, t) => vec![self.tl(r, s), self.tl(ot(r, s), t), self.tl(s, t), self.tl(r, ot(s, t)), self.mu(ot(ot(r, s), t), 0)],
            Inst::Braid(r, s) => vec![self.tl(r, s), self.tl(s, r), self.mu(ot(r, s), 0)],
        }
    }

    fn functor(&self, vals: &[usize]) -> Option<GradedFunctor> {
        let morphisms = (0..self.src.morphism_count()).map(|a| self.fmor(vals, a)).collect::<Option<Vec<_>>>()?;
        let tilde = (0..self.nm * self.nm).map(|i| vals[self.tl(i / self.nm, i % self.nm)]).collect();
        Some(GradedFunctor { objects: self.ty.objects.clone(), morphisms, tilde, unit: self.tgt.cat.id(0) })
    }

    fn dfs(&self, pos: usize, vals: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if pos == self.free.len() {
            out.push(vals.clone());
            return;
        }
        for &c in &self.cands[pos] {
            vals[self.free[pos]] = c;
            if self.at[pos].iter().all(|&i| self.holds(vals, i)) {
                self.dfs(pos + 1, vals, out, limit);
            }
        }
    }
}

/// Every coherent normalized functor `∫_Γ(M, N, h) → target` of type `ty`,
/// in lexicographic order of its tables; at most `limit` of them.
pub fn search_functors(source: &Cochain3, target: &SearchTarget, ty: &FunctorType, guard: u128, limit: usize) -> Result<SearchResult, SearchError> {
    let src = build_reduced(source)?;
    let (nm, ng) = (source.m.order(), source.m.gamma().order());
    let h = &target.cat;
    if *source.m.gamma() != h.gamma {
        return Err(SearchError::WrongType("source and target are graded over different groups".into()));
    }
    if ty.objects.len() != nm || ty.objects.iter().any(|&x| x >= h.objects()) || ty.objects[0] != 0 {
        return Err(SearchError::WrongType("object map must send 0 to the unit".into()));
    }
    if ty.f.len() != source.n.order() || ty.f.iter().any(|&k| k >= target.pi1.order()) {
        return Err(SearchError::WrongType("f must map N into π₁ of the target".into()));
    }
    let fo = |x: usize| ty.objects[x];
    let mut p = Problem {
        src,
        tgt: target,
        ty,
        nm,
        ng,
        fixed: vec![None; nm * ng + nm * nm],
        free: Vec::new(),
        cands: Vec::new(),
        at: Vec::new(),
        upfront: Vec::new(),
    };
    let act = |s: usize, r: usize| source.m.act(s, r);
    for r in 0..nm {
        let i = p.mu(r, 0);
        p.fixed[i] = Some(h.id(fo(r)));
    }
    for s in 1..ng {
        let i = p.mu(0, s);
        p.fixed[i] = Some(h.unit_functor(s));
    }
    for x in 0..nm {
        let (i, j) = (p.tl(0, x), p.tl(x, 0));
        p.fixed[i] = Some(h.left(fo(x)));
        if x != 0 {
            p.fixed[j] = Some(h.right(fo(x)));
        }
    }
    for r in 1..nm {
        for s in 1..ng {
            p.free.push(p.mu(r, s));
            p.cands.push(h.hom(fo(r), fo(act(s, r)), s).collect());
        }
    }
    let mut pairs: Vec<(usize, usize)> = (1..nm).flat_map(|r| (1..nm).map(move |s| (r, s))).collect();
    pairs.sort_by_key(|&(r, s)| (r.min(s), r.max(s), r));
    for (r, s) in pairs {
        p.free.push(p.tl(r, s));
        p.cands.push(h.hom(h.obj_tensor(fo(r), fo(s)), fo(source.m.add(r, s)), 0).collect());
    }
    let total = p.cands.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if total > guard {
        return Err(SearchError::SearchSpaceTooLarge { candidates: total, guard });
    }
    let mut position = vec![usize::MAX; p.fixed.len()];
    p.free.iter().enumerate().for_each(|(i, &s)| position[s] = i);
    let mut insts = Vec::new();
    for r in 0..nm {
        for s in 0..ng {
            for t in 0..ng {
                insts.push(Inst::Comp(r, s, t));
            }
            for q in 0..nm {
                insts.push(Inst::Nat(r, q, s));
            }
        }
        for s in 0..nm {
            insts.push(Inst::Braid(r, s));
            for t in 0..nm {
                insts.push(Inst::Assoc(r, s, t));
            }
        }
    }
    p.at = vec![Vec::new(); p.free.len()];
    for inst in insts {
        match p.slots(inst).iter().map(|&s| position[s]).filter(|&q| q != usize::MAX).max() {
            Some(q) => p.at[q].push(inst),
            None => p.upfront.push(inst),
        }
    }
    let mut base: Vec<usize> = p.fixed.iter().map(|v| v.unwrap_or(usize::MAX)).collect();
    let leaves: Vec<Vec<usize>> = if !p.upfront.iter().all(|&i| p.holds(&base, i)) {
        Vec::new()
    } else if p.free.is_empty() {
        vec![base]
    } else if limit == usize::MAX {
        p.cands[0]
            .par_iter()
            .map(|&c| {
                let mut vals = base.clone();
                vals[p.free[0]] = c;
                let mut out = Vec::new();
                if p.at[0].iter().all(|&i| p.holds(&vals, i)) {
                    p.dfs(1, &mut vals, &mut out, usize::MAX);
                }
                out
            })
            .collect::<Vec<_>>()
            .concat()
    } else {
        let mut out = Vec::new();
        p.dfs(0, &mut base, &mut out, limit);
        out
    };
    let checked: Vec<Option<GradedFunctor>> = leaves
        .par_iter()
        .map(|vals| p.functor(vals).filter(|f| check_graded_functor(f, &p.src, h).passed()))
        .collect();
    let rejected = checked.iter().filter(|f| f.is_none()).count();
    let mut functors: Vec<GradedFunctor> = checked.into_iter().flatten().collect();
    functors.sort();
    Ok(SearchResult { source: p.src, functors, rejected })
}

/// Functors partitioned by homotopy, each class sorted, classes ordered by
/// their least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyClasses {
    pub search: SearchResult,
    pub classes: Vec<Vec<usize>>,
}

impl HomotopyClasses {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.classes.iter().position(|c| c.contains(&i)).expect("every functor is classified")
    }
}

/// The homotopy families `θ_r = aut(F r, k_r)`, `θ_0 = id`, for a fixed object map.
pub fn homotopy_families(target: &SearchTarget, objects: &[usize], guard: u128) -> Result<Vec<Vec<usize>>, SearchError> {
    let (nm, k) = (objects.len(), target.pi1.order());
    let total = (k as u128).checked_pow(nm.saturating_sub(1) as u32).unwrap_or(u128::MAX);
    if total > guard {
        return Err(SearchError::SearchSpaceTooLarge { candidates: total, guard });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0usize; nm];
    loop {
        out.push(objects.iter().zip(&digits).map(|(&y, &d)| target.aut(y, d)).collect());
        let mut i = 1;
        while i < nm && digits[i] + 1 == k {
            digits[i] = 0;
            i += 1;
        }
        if i >= nm {
            break;
        }
        digits[i] += 1;
    }
    Ok(out)
}

pub fn homotopy_classes(source: &Cochain3, target: &SearchTarget, ty: &FunctorType, guard: u128) -> Result<HomotopyClasses, SearchError> {
    let search = search_functors(source, target, ty, guard, usize::MAX)?;
    let families = homotopy_families(target, &ty.objects, guard)?;
    let index: HashMap<&GradedFunctor, usize> = search.functors.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut class = vec![usize::MAX; search.functors.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..search.functors.len() {
        if class[i] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members: Vec<usize> = families
            .par_iter()
            .filter_map(|th| transport(th, &search.functors[i], &search.source, &target.cat))
            .filter_map(|f2| index.get(&f2).copied())
            .collect();
        members.push(i);
        members.sort_unstable();
        members.dedup();
        members.iter().for_each(|&j| class[j] = c);
        classes.push(members);
    }
    Ok(HomotopyClasses { search, classes })
}

/// Whether some type-`(id, 0)` functor `Dis_{Γ,s} Q → ∫_Γ(Q, N′, k)` exists,
/// i.e. whether the class of `k` vanishes.
pub fn class_vanishes(k: &Cochain3, guard: u128) -> Result<bool, SearchError> {
    let q = k.m.clone();
    let source = dis_cochain(&q);
    let target = SearchTarget::reduced(k)?;
    let ty = FunctorType { objects: q.elements().collect(), f: vec![0] };
    Ok(!search_functors(&source, &target, &ty, guard, 1)?.functors.is_empty())
}

/// The zero 3-cochain with trivial coefficients, whose reduced category is `Dis_{Γ,s} Q`.
pub fn dis_cochain(q: &Arc<GammaModule>) -> Cochain3 {
    let zero = Arc::new(GammaModule::cyclic(1, q.gamma().clone()));
    let h = Cochain3::zero(q.clone(), zero).expect("same Γ");
    debug_assert_eq!(build_reduced(&h).ok(), Some(discrete(q)));
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::h2_brute;
    use crate::functor::is_homotopy;
    use crate::group::FiniteGroup;

    fn z2(gamma: &Arc<FiniteGroup>) -> Arc<GammaModule> {
        Arc::new(GammaModule::cyclic(2, gamma.clone()))
    }

    #[test]
    fn dis_z2_to_itself() {
        let g1 = Arc::new(FiniteGroup::trivial());
        let q = z2(&g1);
        let src = dis_cochain(&q);
        let tgt = SearchTarget::reduced(&src).unwrap();
        let ty = FunctorType { objects: vec![0, 1], f: vec![0] };
        let hc = homotopy_classes(&src, &tgt, &ty, 1 << 32).unwrap();
        assert_eq!(hc.class_count(), 1);
        assert_eq!(hc.search.rejected, 0);
    }

    #[test]
    fn dis_z2_to_g0() {
        let g1 = Arc::new(FiniteGroup::trivial());
        let q = z2(&g1);
        let target = SearchTarget::reduced(&Cochain3::zero(q.clone(), q.clone()).unwrap()).unwrap();
        let ty = FunctorType { objects: vec![0, 1], f: vec![0] };
        let hc = homotopy_classes(&dis_cochain(&q), &target, &ty, 1 << 32).unwrap();
        assert_eq!(hc.class_count(), 2);
        assert_eq!(hc.class_count(), h2_brute(&q, &q, 1 << 32).unwrap().class_count());
    }

    #[test]
    fn gamma_classes_match_h2() {
        let g2 = Arc::new(FiniteGroup::cyclic(2));
        let mods = [z2(&g2), Arc::new(GammaModule::cyclic_negation(4)), Arc::new(GammaModule::cyclic(4, g2.clone()))];
        for q in &mods {
            for n in &mods {
                let target = SearchTarget::reduced(&Cochain3::zero(q.clone(), n.clone()).unwrap()).unwrap();
                let ty = FunctorType { objects: q.elements().collect(), f: vec![0] };
                let hc = homotopy_classes(&dis_cochain(q), &target, &ty, 1 << 32).unwrap();
                assert_eq!(hc.search.rejected, 0);
                assert_eq!(hc.class_count(), h2_brute(q, n, 1 << 32).unwrap().class_count(), "{q:?} {n:?}");
                let (g, h) = (&hc.search.source, &target.cat);
                let fams = homotopy_families(&target, &ty.objects, 1 << 32).unwrap();
                let f0 = &hc.search.functors[0];
                for th in &fams {
                    let f2 = transport(th, f0, g, h).unwrap();
                    assert!(is_homotopy(th, f0, &f2, g, h));
                }
            }
        }
    }

    #[test]
    fn braid_obstruction() {
        let g1 = Arc::new(FiniteGroup::trivial());
        let q = z2(&g1);
        let mut h = Cochain3::zero(q.clone(), q.clone()).unwrap();
        h.set_braid(1, 1, 1);
        assert!(crate::catgroup::check_axioms(&build_reduced(&h).unwrap()).passed());
        assert!(!class_vanishes(&h, 1 << 32).unwrap());
        let target = SearchTarget::reduced(&h).unwrap();
        let ty = FunctorType { objects: vec![0, 1], f: vec![0] };
        assert_eq!(homotopy_classes(&dis_cochain(&q), &target, &ty, 1 << 32).unwrap().class_count(), 0);
        assert!(class_vanishes(&Cochain3::zero(q.clone(), q).unwrap(), 1 << 32).unwrap());
    }

    #[test]
    fn guard_trips() {
        let g2 = Arc::new(FiniteGroup::cyclic(2));
        let q = Arc::new(GammaModule::cyclic(4, g2));
        let target = SearchTarget::reduced(&Cochain3::zero(q.clone(), q.clone()).unwrap()).unwrap();
        let ty = FunctorType { objects: q.elements().collect(), f: vec![0] };
        assert!(matches!(search_functors(&dis_cochain(&q), &target, &ty, 1000, usize::MAX), Err(SearchError::SearchSpaceTooLarge { .. })));
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Γ-module extensions of the type of an abelian Γ-crossed module: crossed
//! products, equivalence by exhaustive isomorphism search, the dictionary
//! with graded functors `Dis_{Γ,s} Q → 𝔾_ℳ`, and classification.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{abelian_invariants, GammaModule};
use crate::catgroup::GradedCatGroup;
use crate::cohomology::{h2, pullback3, CohomologyError, SymmetricCochain2};
use crate::crossed::ValidatedModule;
use crate::functor::{check_graded_functor, GradedFunctor};
use crate::group::{FiniteGroup, GammaAction, GroupHom};
use crate::reduced::reduced_model;
use crate::report::Report;
use crate::search::{class_vanishes, dis_cochain, homotopy_classes, search_functors, FunctorType, SearchError, SearchTarget};

/// Largest `|E|` for which equivalence is decided by exhaustive search.
pub const EQUIVALENCE_ORDER_LIMIT: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("the crossed module is not abelian")]
    NotAbelian,
    #[error("invalid extension:\n{0}")]
    Invalid(Report),
    #[error("ψ is not well defined: elements {e1} and {e2} over the same u give different classes")]
    NotWellDefined { e1: usize, e2: usize },
    #[error("section is not a section at u = {u}")]
    BadSection { u: usize },
    #[error("functor is not coherent:\n{0}")]
    NotCoherent(Report),
    #[error("wrong type: {0}")]
    WrongType(String),
    #[error("search space of {candidates} candidates exceeds the guard {guard}")]
    SearchSpaceTooLarge { candidates: u128, guard: u128 },
    #[error("twisted data does not define a Γ-module: {0}")]
    NotAModule(String),
    #[error("independent routes disagree: {0}")]
    RoutesDisagree(String),
}

impl From<SearchError> for ExtensionError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::SearchSpaceTooLarge { candidates, guard } => ExtensionError::SearchSpaceTooLarge { candidates, guard },
            e => ExtensionError::WrongType(e.to_string()),
        }
    }
}

impl From<CohomologyError> for ExtensionError {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::SearchSpaceTooLarge { candidates, guard } => ExtensionError::SearchSpaceTooLarge { candidates, guard },
            e => ExtensionError::WrongType(e.to_string()),
        }
    }
}

/// `B` with its Γ-action, for an abelian module.
pub fn b_module(m: &ValidatedModule) -> Result<Arc<GammaModule>, ExtensionError> {
    GammaModule::new(m.gamma_b.clone()).map(Arc::new).map_err(|_| ExtensionError::NotAbelian)
}

/// `0 → B →j E →p Q → 0` with `ε: E → D`, `εj = d`.
#[derive(Debug, Clone)]
pub struct GammaModuleExtension {
    pub module: ValidatedModule,
    pub q: Arc<GammaModule>,
    pub e: Arc<GammaModule>,
    pub j: GroupHom,
    pub p: GroupHom,
    pub eps: GroupHom,
}

impl GammaModuleExtension {
    pub fn new(module: ValidatedModule, q: Arc<GammaModule>, e: Arc<GammaModule>, j: GroupHom, p: GroupHom, eps: GroupHom) -> Result<Self, ExtensionError> {
        let ext = GammaModuleExtension { module, q, e, j, p, eps };
        let r = ext.validate();
        if r.passed() {
            Ok(ext)
        } else {
            Err(ExtensionError::Invalid(r))
        }
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        let m = &self.module;
        r.record_bool("abelian module", m.is_abelian());
        let shapes = *self.j.domain == *m.b
            && self.j.codomain == *self.e.group()
            && self.p.domain == *self.e.group()
            && self.p.codomain == *self.q.group()
            && self.eps.domain == *self.e.group()
            && *self.eps.codomain == *m.dg
            && self.e.gamma() == m.gamma()
            && self.q.gamma() == m.gamma();
        r.record_bool("shapes", shapes);
        if !r.passed() {
            return r;
        }
        r.record_bool("j homomorphism", self.j.is_hom());
        r.record_bool("p homomorphism", self.p.is_hom());
        r.record_bool("eps homomorphism", self.eps.is_hom());
        r.record_bool("j injective", self.j.is_injective());
        r.record_bool("p surjective", self.p.is_surjective());
        let mut im = self.j.image();
        im.sort_unstable();
        r.record_bool("im j = ker p", im == self.p.kernel());
        let (ng, ne, nb) = (m.gamma().order(), self.e.order(), m.b.order());
        let e = &self.e;
        let pairs = |n: usize| (0..ng).flat_map(move |s| (0..n).map(move |x| (s, x)));
        r.record("j equivariant", pairs(nb).filter(|&(s, b)| self.j.apply(m.gamma_b.apply(s, b)) != e.act(s, self.j.apply(b))).map(|(s, b)| vec![s, b]));
        r.record("p equivariant", pairs(ne).filter(|&(s, x)| self.p.apply(e.act(s, x)) != self.q.act(s, self.p.apply(x))).map(|(s, x)| vec![s, x]));
        r.record("eps equivariant", pairs(ne).filter(|&(s, x)| self.eps.apply(e.act(s, x)) != m.gamma_d.apply(s, self.eps.apply(x))).map(|(s, x)| vec![s, x]));
        r.record("eps j = d", (0..nb).filter(|&b| self.eps.apply(self.j.apply(b)) != m.d.apply(b)).map(|b| vec![b]));
        r
    }

    /// The element `j⁻¹(x)` for `x ∈ Im j`.
    fn j_inv(&self, x: usize) -> Option<usize> {
        (0..self.j.domain.order()).find(|&b| self.j.apply(b) == x)
    }
}

/// `ψ: Q → Coker d` with `ψp = qε`.
pub fn induced_psi(ext: &GammaModuleExtension) -> Result<GroupHom, ExtensionError> {
    let p0 = ext.module.pi0();
    let mut psi = vec![usize::MAX; ext.q.order()];
    let mut witness = vec![usize::MAX; ext.q.order()];
    for x in ext.e.elements() {
        let u = ext.p.apply(x);
        let c = p0.proj.apply(ext.eps.apply(x));
        if psi[u] == usize::MAX {
            psi[u] = c;
            witness[u] = x;
        } else if psi[u] != c {
            return Err(ExtensionError::NotWellDefined { e1: witness[u], e2: x });
        }
    }
    Ok(GroupHom::new_unchecked(ext.q.group().clone(), p0.module.group().clone(), psi))
}

/// `B ×_f Q` with `(b,u) + (c,v) = (b + c + f(u,v), u + v)`,
/// `σ(b,u) = (σb + f(u,σ), σu)`, `ε(b,u) = db + F(u)`. The pair `(b,u)`
/// has index `b·|Q| + u`.
pub fn crossed_product(module: &ValidatedModule, q: &Arc<GammaModule>, f: &SymmetricCochain2, objects: &[usize]) -> Result<GammaModuleExtension, ExtensionError> {
    if !module.is_abelian() {
        return Err(ExtensionError::NotAbelian);
    }
    let b = &*module.b;
    let (nb, nq, ng) = (b.order(), q.order(), q.gamma().order());
    if *f.b.group() != module.b || f.q != *q || objects.len() != nq {
        return Err(ExtensionError::WrongType("f must be a cochain on Q with values in B".into()));
    }
    let pack = |b: usize, u: usize| b * nq + u;
    let rows: Vec<Vec<usize>> = (0..nb * nq)
        .map(|x| {
            let (bx, ux) = (x / nq, x % nq);
            (0..nb * nq).map(|y| pack(b.mul(b.mul(bx, y / nq), f.pair(ux, y % nq)), q.add(ux, y % nq))).collect()
        })
        .collect();
    let e = Arc::new(FiniteGroup::from_table(&rows).map_err(|err| ExtensionError::NotAModule(err.to_string()))?);
    let act: Vec<Vec<usize>> = (0..ng)
        .map(|s| (0..nb * nq).map(|x| pack(b.mul(module.gamma_b.apply(s, x / nq), f.grade(x % nq, s)), q.act(s, x % nq))).collect())
        .collect();
    let action = GammaAction::new(q.gamma().clone(), e.clone(), &act).map_err(|err| ExtensionError::NotAModule(err.to_string()))?;
    let em = Arc::new(GammaModule::new(action).map_err(|err| ExtensionError::NotAModule(err.to_string()))?);
    let j = GroupHom::new_unchecked(module.b.clone(), e.clone(), (0..nb).map(|x| pack(x, 0)).collect());
    let p = GroupHom::new_unchecked(e.clone(), q.group().clone(), (0..nb * nq).map(|x| x % nq).collect());
    let eps = GroupHom::new_unchecked(e, module.dg.clone(), (0..nb * nq).map(|x| module.dg.mul(module.d.apply(x / nq), objects[x % nq])).collect());
    GammaModuleExtension::new(module.clone(), q.clone(), em, j, p, eps)
}

/// The `B`-valued data `(f(u,v), f(u,σ))` of a functor `Dis_{Γ,s} Q → 𝔾_ℳ`:
/// the payloads of `F̃_{u,v}` and of `F(u → σu)`.
pub fn functor_cochain(f: &GradedFunctor, source: &GradedCatGroup, target: &GradedCatGroup, q: &Arc<GammaModule>, b: &Arc<GammaModule>) -> SymmetricCochain2 {
    let (nq, ng) = (q.order(), q.gamma().order());
    let pay = |i: usize| target.morphism(i).payload;
    let pair: Vec<Vec<usize>> = (0..nq).map(|u| (0..nq).map(|v| pay(f.tilde(u, v))).collect()).collect();
    let grade: Vec<Vec<usize>> = (0..nq).map(|u| (0..ng).map(|s| pay(f.morphisms[source.index(s, u, 0)])).collect()).collect();
    SymmetricCochain2::from_tables(q.clone(), b.clone(), &pair, &grade).expect("tables have the shape of Q")
}

/// The crossed product of a coherent functor `Dis_{Γ,s} Q → 𝔾_ℳ` with `F(0) = 0`.
pub fn extension_from_functor(f: &GradedFunctor, module: &ValidatedModule, q: &Arc<GammaModule>) -> Result<GammaModuleExtension, ExtensionError> {
    let source = crate::catgroup::discrete(q);
    let target = crate::catgroup::build_catgroup(module);
    let r = check_graded_functor(f, &source, &target);
    if !r.passed() {
        return Err(ExtensionError::NotCoherent(r));
    }
    if f.objects[0] != 0 {
        return Err(ExtensionError::WrongType("F(0) must be the unit".into()));
    }
    let fc = functor_cochain(f, &source, &target, q, &b_module(module)?);
    crossed_product(module, q, &fc, &f.objects)
}

/// `F(u) = ε(e_u)`, `F̃_{u,v} = (f(u,v), 1)`, `F(u → σu) = (f(u,σ), σ)` with
/// `e_u + e_v = f(u,v) + e_{u+v}` and `σe_u = f(u,σ) + e_{σu}`.
pub fn functor_from_extension(ext: &GammaModuleExtension, section: &[usize]) -> Result<(GradedFunctor, SymmetricCochain2), ExtensionError> {
    let (q, e) = (&ext.q, &ext.e);
    let (nq, ng) = (q.order(), q.gamma().order());
    if section.len() != nq || section[0] != 0 {
        return Err(ExtensionError::BadSection { u: 0 });
    }
    if let Some(u) = (0..nq).find(|&u| section[u] >= e.order() || ext.p.apply(section[u]) != u) {
        return Err(ExtensionError::BadSection { u });
    }
    let bad = |u| ExtensionError::BadSection { u };
    let pair = (0..nq)
        .map(|u| (0..nq).map(|v| ext.j_inv(e.sub(e.add(section[u], section[v]), section[q.add(u, v)])).ok_or(bad(u))).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let grade = (0..nq)
        .map(|u| (0..ng).map(|s| ext.j_inv(e.sub(e.act(s, section[u]), section[q.act(s, u)])).ok_or(bad(u))).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let fc = SymmetricCochain2::from_tables(q.clone(), b_module(&ext.module)?, &pair, &grade).expect("tables have the shape of Q");
    let module = &ext.module;
    let (nd, nb) = (module.dg.order(), module.b.order());
    let idx = |s: usize, x: usize, p: usize| (s * nd + x) * nb + p;
    let objects: Vec<usize> = section.iter().map(|&x| ext.eps.apply(x)).collect();
    let morphisms = (0..ng).flat_map(|s| (0..nq).map(move |u| (s, u))).map(|(s, u)| idx(s, objects[u], grade[u][s])).collect();
    let tilde = (0..nq * nq).map(|i| idx(0, module.dg.mul(objects[i / nq], objects[i % nq]), pair[i / nq][i % nq])).collect();
    Ok((GradedFunctor { objects, morphisms, tilde, unit: idx(0, 0, 0) }, fc))
}

/// An isomorphism `α: E → E′` of Γ-modules with `αj = j′`, `p′α = p`,
/// `ε′α = ε`; the lexicographically least one, or `None`.
pub fn are_equivalent(ext: &GammaModuleExtension, ext2: &GammaModuleExtension) -> Result<Option<GroupHom>, ExtensionError> {
    if ext.module.inner() != ext2.module.inner() || ext.q != ext2.q {
        return Err(ExtensionError::WrongType("extensions of different data".into()));
    }
    let (e, e2) = (&ext.e, &ext2.e);
    if e.order() != e2.order() {
        return Ok(None);
    }
    if e.order() > EQUIVALENCE_ORDER_LIMIT {
        return Err(ExtensionError::SearchSpaceTooLarge { candidates: e.order() as u128, guard: EQUIVALENCE_ORDER_LIMIT as u128 });
    }
    let ab = &e.abelian;
    let (gens, inv) = (ab.generators(), ab.invariants());
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .zip(inv)
        .map(|(&g, &d)| {
            e2.elements()
                .filter(|&x| ext2.p.apply(x) == ext.p.apply(g) && ext2.eps.apply(x) == ext.eps.apply(g) && e2.abelian.scale(x, d as i64) == 0)
                .collect()
        })
        .collect();
    let total: usize = cands.iter().map(Vec::len).product();
    let ng = e.gamma().order();
    let build = |pick: &[usize]| -> Vec<usize> {
        e.elements()
            .map(|x| ab.coords(x).iter().zip(pick).fold(0, |acc, (&c, &img)| e2.add(acc, e2.abelian.scale(img, c as i64))))
            .collect()
    };
    let valid = |map: &[usize]| {
        let mut seen = vec![false; e2.order()];
        map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
            && (0..ext.j.domain.order()).all(|b| map[ext.j.apply(b)] == ext2.j.apply(b))
            && e.elements().all(|x| ext2.p.apply(map[x]) == ext.p.apply(x) && ext2.eps.apply(map[x]) == ext.eps.apply(x))
            && (0..ng).all(|s| e.elements().all(|x| map[e.act(s, x)] == e2.act(s, map[x])))
    };
    let best = (0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let pick: Vec<usize> = cands
                .iter()
                .map(|c| {
                    let v = c[code % c.len()];
                    code /= c.len();
                    v
                })
                .collect();
            let map = build(&pick);
            valid(&map).then_some(map)
        })
        .min();
    Ok(best.map(|map| GroupHom::new_unchecked(e.group().clone(), e2.group().clone(), map)))
}

/// All `B`-valued normalized 2-cocycles `f` with `d f = δF` for the object
/// map `F`, enumerated slot by slot over lifts.
pub fn twisted_cocycles(module: &ValidatedModule, q: &Arc<GammaModule>, objects: &[usize], guard: u128) -> Result<Vec<SymmetricCochain2>, ExtensionError> {
    let bm = b_module(module)?;
    let (nq, ng, nb) = (q.order(), q.gamma().order(), module.b.order());
    let dg = &*module.dg;
    let lifts = |x: usize| -> Vec<usize> { (0..nb).filter(|&c| module.d.apply(c) == x).collect() };
    let mut slots: Vec<(bool, usize, usize, Vec<usize>)> = Vec::new();
    for u in 1..nq {
        for v in u..nq {
            slots.push((true, u, v, lifts(dg.div(dg.mul(objects[u], objects[v]), objects[q.add(u, v)]))));
        }
        for s in 1..ng {
            slots.push((false, u, s, lifts(dg.div(module.gamma_d.apply(s, objects[u]), objects[q.act(s, u)]))));
        }
    }
    let total = slots.iter().fold(1u128, |acc, s| acc.saturating_mul(s.3.len() as u128));
    if total > guard {
        return Err(ExtensionError::SearchSpaceTooLarge { candidates: total, guard });
    }
    let base = SymmetricCochain2::zero(q.clone(), bm).expect("same Γ");
    let mut out: Vec<SymmetricCochain2> = (0..total as usize)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut f = base.clone();
            for (pair, a, b, c) in &slots {
                let v = c[code % c.len()];
                code /= c.len();
                if *pair {
                    f.set_pair(*a, *b, v);
                    f.set_pair(*b, *a, v);
                } else {
                    f.set_grade(*a, *b, v);
                }
            }
            f.is_2cocycle().then_some(f)
        })
        .collect();
    out.sort_by_key(|a| (a.pair_rows(), a.grade_rows()));
    Ok(out)
}

/// Partition of items into classes under an equivalence decided pairwise
/// against class representatives.
fn partition<T>(items: &[T], equiv: impl Fn(&T, &T) -> Result<bool, ExtensionError>) -> Result<Vec<Vec<usize>>, ExtensionError> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'next: for (i, x) in items.iter().enumerate() {
        for c in classes.iter_mut() {
            if equiv(&items[c[0]], x)? {
                c.push(i);
                continue 'next;
            }
        }
        classes.push(vec![i]);
    }
    Ok(classes)
}

#[derive(Debug, Clone, Serialize)]
pub struct SchreierReport {
    pub functors: usize,
    pub functor_classes: usize,
    pub extensions: usize,
    pub extension_classes: usize,
    pub report: Report,
}

impl SchreierReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Homotopy classes of type-`(ψ,0)` functors `Dis_{Γ,s} Q → 𝔾_ℳ` against
/// equivalence classes of extensions inducing `ψ`, through `Ω(F) = B ×_f Q`.
pub fn schreier_bijection_check(module: &ValidatedModule, q: &Arc<GammaModule>, psi: &GroupHom, guard: u128) -> Result<SchreierReport, ExtensionError> {
    if !module.is_abelian() {
        return Err(ExtensionError::NotAbelian);
    }
    let target = SearchTarget::built(module);
    let ty = FunctorType::over_built(module, psi, 1);
    let hc = homotopy_classes(&dis_cochain(q), &target, &ty, guard)?;
    let fs = &hc.search.functors;
    let omega: Vec<GammaModuleExtension> = fs.iter().map(|f| extension_from_functor(f, module, q)).collect::<Result<_, _>>()?;
    let fcs = twisted_cocycles(module, q, &ty.objects, guard)?;
    let exts: Vec<GammaModuleExtension> = fcs.iter().map(|f| crossed_product(module, q, f, &ty.objects)).collect::<Result<_, _>>()?;
    let eq = |a: &GammaModuleExtension, b: &GammaModuleExtension| are_equivalent(a, b).map(|w| w.is_some());
    let ext_classes = partition(&exts, eq)?;
    let mut r = Report::new();
    r.record("induced psi", exts.iter().enumerate().filter(|(_, e)| induced_psi(e).map(|h| h.map != psi.map).unwrap_or(true)).map(|(i, _)| vec![i]));
    let pairs: Vec<(usize, usize)> = (0..fs.len()).flat_map(|i| (i..fs.len()).map(move |j| (i, j))).collect();
    let verdicts = pairs
        .par_iter()
        .map(|&(i, j)| {
            let same = hc.class_of(i) == hc.class_of(j);
            eq(&omega[i], &omega[j]).map(|e| (i, j, same, e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    r.record("homotopic implies equivalent", verdicts.iter().filter(|v| v.2 && !v.3).map(|v| vec![v.0, v.1]));
    r.record("equivalent implies homotopic", verdicts.iter().filter(|v| !v.2 && v.3).map(|v| vec![v.0, v.1]));
    let mut surj = Vec::new();
    for (c, members) in ext_classes.iter().enumerate() {
        let hit = hc.classes.iter().map(|cl| &omega[cl[0]]).try_fold(false, |acc, o| eq(o, &exts[members[0]]).map(|e| acc || e))?;
        if !hit {
            surj.push(vec![c]);
        }
    }
    r.record("surjective", surj);
    r.record_bool("cardinalities agree", hc.class_count() == ext_classes.len());
    Ok(SchreierReport { functors: fs.len(), functor_classes: hc.class_count(), extensions: exts.len(), extension_classes: ext_classes.len(), report: r })
}

#[derive(Debug, Clone)]
pub enum Classification {
    Obstructed,
    Classes {
        h2_invariants: Vec<u64>,
        count: u64,
        representatives: Vec<GammaModuleExtension>,
        /// class count found by exhaustive enumeration, when it completed
        exhaustive_count: Option<usize>,
    },
}

impl Classification {
    pub fn count(&self) -> u64 {
        match self {
            Classification::Obstructed => 0,
            Classification::Classes { count, .. } => *count,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Classification::Obstructed => serde_json::json!({"obstructed": true, "h2_invariants": [], "class_count": 0, "representatives": []}),
            Classification::Classes { h2_invariants, count, representatives, exhaustive_count } => serde_json::json!({
                "obstructed": false,
                "h2_invariants": h2_invariants,
                "class_count": count,
                "exhaustive_class_count": exhaustive_count,
                "representatives": representatives.iter().map(|e| serde_json::json!({
                    "invariants": e.e.abelian.invariants(),
                    "E": e.e.group().rows(),
                    "gamma_action": e.e.action.rows(),
                    "eps": e.eps.map,
                })).collect::<Vec<_>>(),
            }),
        }
    }
}

/// Extensions of type `ℳ` inducing `ψ`: obstructed exactly when `ψ*h` does
/// not vanish; otherwise one representative per class of `H²_{Γ,s}(Q, Ker d)`.
pub fn classify(module: &ValidatedModule, q: &Arc<GammaModule>, psi: &GroupHom, guard: u128) -> Result<Classification, ExtensionError> {
    if !module.is_abelian() {
        return Err(ExtensionError::NotAbelian);
    }
    let (p0, p1) = (module.pi0(), module.pi1());
    if psi.domain != *q.group() || psi.codomain != *p0.module.group() || !q.is_module_map(psi, &p0.module) {
        return Err(ExtensionError::WrongType("ψ must be a Γ-module map Q → Coker d".into()));
    }
    let red = reduced_model(module).map_err(|_| ExtensionError::NotAbelian)?;
    let k = pullback3(psi, q.clone(), &red.h)?;
    let vanishes = class_vanishes(&k, guard)?;
    let target = SearchTarget::built(module);
    let ty = FunctorType::over_built(module, psi, 1);
    let found = search_functors(&dis_cochain(q), &target, &ty, guard, 1)?;
    if vanishes != !found.functors.is_empty() {
        return Err(ExtensionError::RoutesDisagree("obstruction class and direct search".into()));
    }
    if !vanishes {
        return Ok(Classification::Obstructed);
    }
    let bm = b_module(module)?;
    let f0 = functor_cochain(&found.functors[0], &found.source, &target.cat, q, &bm);
    let h = h2(q, &p1.module, guard)?;
    let incl = GroupHom::new_unchecked(p1.module.group().clone(), module.b.clone(), p1.incl.map.clone());
    let representatives = h
        .snf
        .class_representatives()
        .iter()
        .map(|z| crossed_product(module, q, &f0.add(&z.pushforward(&incl, bm.clone())), &ty.objects))
        .collect::<Result<Vec<_>, _>>()?;
    let exhaustive_count = twisted_cocycles(module, q, &ty.objects, guard).ok().and_then(|fcs| {
        let exts: Vec<_> = fcs.iter().map(|f| crossed_product(module, q, f, &ty.objects)).collect::<Result<_, _>>().ok()?;
        partition(&exts, |a, b| are_equivalent(a, b).map(|w| w.is_some())).ok().map(|c| c.len())
    });
    Ok(Classification::Classes { h2_invariants: h.snf.invariants.clone(), count: h.snf.order(), representatives, exhaustive_count })
}

/// Invariant factors of the middle term.
pub fn middle_invariants(ext: &GammaModuleExtension) -> Vec<u64> {
    abelian_invariants(ext.e.group()).expect("E is abelian")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::BraidedGammaCrossedModule;
    use crate::group::FiniteGroup;

    fn abelian(b: usize, dg: usize, d: Vec<usize>, gamma: usize, act_b: Vec<usize>, act_d: Vec<usize>) -> ValidatedModule {
        let (bg, dgg) = (Arc::new(FiniteGroup::cyclic(b)), Arc::new(FiniteGroup::cyclic(dg)));
        let mut ab = vec![(0..b).collect::<Vec<_>>()];
        let mut ad = vec![(0..dg).collect::<Vec<_>>()];
        if gamma == 2 {
            ab.push(act_b);
            ad.push(act_d);
        }
        BraidedGammaCrossedModule::from_parts(bg, dgg, d, &vec![(0..b).collect(); dg], &vec![vec![0; dg]; dg], Arc::new(FiniteGroup::cyclic(gamma)), &ab, &ad)
            .unwrap()
            .validated()
            .unwrap()
    }

    fn zero_psi(q: &Arc<GammaModule>, m: &ValidatedModule) -> GroupHom {
        GroupHom::zero(q.group().clone(), m.pi0().module.group().clone())
    }

    #[test]
    fn z2_by_z2() {
        let m = abelian(2, 1, vec![0, 0], 1, vec![], vec![]);
        let q = Arc::new(GammaModule::cyclic(2, m.gamma().clone()));
        let psi = zero_psi(&q, &m);
        let c = classify(&m, &q, &psi, 1 << 32).unwrap();
        assert_eq!(c.count(), 2);
        let Classification::Classes { representatives, exhaustive_count, .. } = &c else { panic!() };
        let mut inv: Vec<Vec<u64>> = representatives.iter().map(middle_invariants).collect();
        inv.sort();
        assert_eq!(inv, vec![vec![2, 2], vec![4]]);
        assert_eq!(*exhaustive_count, Some(2));
        let s = schreier_bijection_check(&m, &q, &psi, 1 << 32).unwrap();
        assert!(s.passed(), "{}", s.report);
        assert_eq!((s.functor_classes, s.extension_classes), (2, 2));
    }

    #[test]
    fn d_isomorphism_is_split() {
        let m = abelian(2, 2, vec![0, 1], 1, vec![], vec![]);
        let q = Arc::new(GammaModule::cyclic(2, m.gamma().clone()));
        assert_eq!(classify(&m, &q, &zero_psi(&q, &m), 1 << 32).unwrap().count(), 1);
    }

    #[test]
    fn sections_change_f_by_coboundaries() {
        let m = abelian(2, 1, vec![0, 0], 1, vec![], vec![]);
        let q = Arc::new(GammaModule::cyclic(2, m.gamma().clone()));
        let (nq, nb) = (2, 2);
        let f = SymmetricCochain2::from_tables(q.clone(), b_module(&m).unwrap(), &[vec![0, 0], vec![0, 1]], &[vec![0], vec![0]]).unwrap();
        let ext = crossed_product(&m, &q, &f, &[0, 0]).unwrap();
        assert_eq!(middle_invariants(&ext), vec![4]);
        for b in 0..nb {
            let section = vec![0, b * nq + 1];
            let (func, fc) = functor_from_extension(&ext, &section).unwrap();
            let back = extension_from_functor(&func, &m, &q).unwrap();
            assert!(are_equivalent(&back, &ext).unwrap().is_some());
            // α(b,u) = b + e_u
            let alpha = GroupHom::new_unchecked(back.e.group().clone(), ext.e.group().clone(), back.e.elements().map(|x| ext.e.add(ext.j.apply(x / nq), section[x % nq])).collect());
            assert!(alpha.is_hom() && alpha.is_injective());
            assert!(back.e.elements().all(|x| ext.eps.apply(alpha.apply(x)) == back.eps.apply(x)));
            let diff = fc.sub(&f);
            let g = crate::cohomology::Cochain1 { q: q.clone(), b: b_module(&m).unwrap(), values: vec![0, b] };
            assert_eq!(diff, crate::cohomology::coboundary2(&g).unwrap().neg());
        }
        assert!(matches!(functor_from_extension(&ext, &[0, 0]), Err(ExtensionError::BadSection { u: 1 })));
    }

    #[test]
    fn z4_negation_schreier() {
        let m = abelian(4, 1, vec![0; 4], 2, vec![0, 3, 2, 1], vec![0]);
        let q = Arc::new(GammaModule::cyclic(2, m.gamma().clone()));
        let s = schreier_bijection_check(&m, &q, &zero_psi(&q, &m), 1 << 32).unwrap();
        assert!(s.passed(), "{}", s.report);
        let h = crate::cohomology::h2(&q, &b_module(&m).unwrap(), 1 << 32).unwrap();
        assert_eq!(s.functor_classes as u64, h.snf.order());
    }

    #[test]
    fn psi_nonzero() {
        // ℤ/2 → ℤ/4, Coker d = ℤ/2, Q = ℤ/2, ψ = id: realized by E = ℤ/4 → ℤ/4
        let m = abelian(2, 4, vec![0, 2], 1, vec![], vec![]);
        let q = Arc::new(GammaModule::cyclic(2, m.gamma().clone()));
        let psi = GroupHom::identity(q.group().clone());
        let psi = GroupHom::new_unchecked(q.group().clone(), m.pi0().module.group().clone(), psi.map);
        let c = classify(&m, &q, &psi, 1 << 32).unwrap();
        assert_eq!(c.count(), 1);
        let Classification::Classes { representatives, exhaustive_count, .. } = &c else { panic!() };
        assert_eq!(induced_psi(&representatives[0]).unwrap().map, psi.map);
        assert_eq!(*exhaustive_count, Some(1));
        let s = schreier_bijection_check(&m, &q, &psi, 1 << 32).unwrap();
        assert!(s.passed(), "{}", s.report);
    }
}

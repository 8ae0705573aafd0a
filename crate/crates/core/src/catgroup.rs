// SPDX-License-Identifier: Apache-2.0

//! Finite Γ-graded categorical groups with dense composition and tensor
//! tables, the builder from braided Γ-crossed modules, the reduced model
//! `∫_Γ(M, N, h)`, and the coherence checker.
//!
//! Morphisms are `(payload, σ)` out of a source object and are indexed by
//! `((σ·|Ob| + source)·|payloads| + payload)`.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::abelian::GammaModule;
use crate::cohomology::Cochain3;
use crate::crossed::{BraidedGammaCrossedModule, ValidatedModule};
use crate::group::FiniteGroup;
use crate::report::Report;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatGroupError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("category has {0} morphisms, more than the supported bound")]
    TooLarge(usize),
}

/// Largest morphism count accepted by the builders.
pub const MAX_MORPHISMS: usize = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    pub src: usize,
    pub tgt: usize,
    pub payload: usize,
    pub grade: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCatGroup {
    pub gamma: Arc<FiniteGroup>,
    objects: usize,
    payloads: usize,
    obj_tensor: Vec<usize>,
    targets: Vec<usize>,
    comp: Vec<u32>,
    tensor: Vec<u32>,
    identity: Vec<usize>,
    inverse: Vec<u32>,
    assoc: Vec<usize>,
    left: Vec<usize>,
    right: Vec<usize>,
    braid: Vec<usize>,
    unit_functor: Vec<usize>,
}

/// Structure maps from which a category is tabulated. Payload-valued
/// closures receive morphisms as records and return the payload of the
/// result; sources and grades of results are implied by the structure.
pub struct Structure<'a> {
    pub gamma: Arc<FiniteGroup>,
    pub objects: usize,
    pub payloads: usize,
    pub obj_tensor: &'a (dyn Fn(usize, usize) -> usize + Sync),
    pub target: &'a (dyn Fn(usize, usize, usize) -> usize + Sync),
    /// payload of `g ∘ f`
    pub compose: &'a (dyn Fn(Morphism, Morphism) -> usize + Sync),
    /// payload of `f ⊗ g`
    pub tensor: &'a (dyn Fn(Morphism, Morphism) -> usize + Sync),
    pub identity: &'a (dyn Fn(usize) -> usize + Sync),
    pub assoc: &'a (dyn Fn(usize, usize, usize) -> usize + Sync),
    pub left: &'a (dyn Fn(usize) -> usize + Sync),
    pub right: &'a (dyn Fn(usize) -> usize + Sync),
    pub braid: &'a (dyn Fn(usize, usize) -> usize + Sync),
    pub unit_functor: &'a (dyn Fn(usize) -> usize + Sync),
}

impl GradedCatGroup {
    pub fn tabulate(s: &Structure<'_>) -> Result<Self, CatGroupError> {
        let (n, p, ng) = (s.objects, s.payloads, s.gamma.order());
        let m = n * p * ng;
        if m > MAX_MORPHISMS {
            return Err(CatGroupError::TooLarge(m));
        }
        let idx = |g: usize, x: usize, q: usize| (g * n + x) * p + q;
        let obj_tensor: Vec<usize> = (0..n * n).map(|i| (s.obj_tensor)(i / n, i % n)).collect();
        if obj_tensor.iter().any(|&x| x >= n) {
            Err(CatGroupError::ShapeMismatch("object tensor out of range".into()))?;
        }
        let mut targets = vec![0; m];
        for g in 0..ng {
            for x in 0..n {
                for q in 0..p {
                    targets[idx(g, x, q)] = (s.target)(x, q, g);
                }
            }
        }
        let rec = |i: usize| Morphism { src: (i / p) % n, tgt: targets[i], payload: i % p, grade: i / (p * n) };
        let ot = |x: usize, y: usize| obj_tensor[x * n + y];
        let comp: Vec<u32> = (0..m)
            .into_par_iter()
            .flat_map_iter(|g| {
                let gm = rec(g);
                (0..m).map(move |f| {
                    let fm = rec(f);
                    if fm.tgt != gm.src {
                        return NONE;
                    }
                    let q = (s.compose)(fm, gm);
                    idx(s.gamma.mul(gm.grade, fm.grade), fm.src, q) as u32
                })
            })
            .collect();
        let tensor: Vec<u32> = (0..m)
            .into_par_iter()
            .flat_map_iter(|f| {
                let fm = rec(f);
                (0..m).map(move |g| {
                    let gm = rec(g);
                    if fm.grade != gm.grade {
                        return NONE;
                    }
                    let q = (s.tensor)(fm, gm);
                    idx(fm.grade, ot(fm.src, gm.src), q) as u32
                })
            })
            .collect();
        let identity: Vec<usize> = (0..n).map(|x| idx(0, x, (s.identity)(x))).collect();
        let mut assoc = vec![0; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    assoc[(x * n + y) * n + z] = idx(0, ot(ot(x, y), z), (s.assoc)(x, y, z));
                }
            }
        }
        let left = (0..n).map(|x| idx(0, ot(0, x), (s.left)(x))).collect();
        let right = (0..n).map(|x| idx(0, ot(x, 0), (s.right)(x))).collect();
        let braid = (0..n * n).map(|i| idx(0, ot(i / n, i % n), (s.braid)(i / n, i % n))).collect();
        let unit_functor = (0..ng).map(|g| idx(g, 0, (s.unit_functor)(g))).collect();
        let mut out = GradedCatGroup {
            gamma: s.gamma.clone(),
            objects: n,
            payloads: p,
            obj_tensor,
            targets,
            comp,
            tensor,
            identity,
            inverse: vec![NONE; m],
            assoc,
            left,
            right,
            braid,
            unit_functor,
        };
        out.inverse = (0..m)
            .map(|f| {
                let fm = out.morphism(f);
                let gi = out.gamma.inv(fm.grade);
                out.hom_range(fm.tgt, gi)
                    .find(|&g| out.comp(g, f) == Some(out.identity[fm.src]) && out.comp(f, g) == Some(out.identity[fm.tgt]))
                    .map_or(NONE, |g| g as u32)
            })
            .collect();
        Ok(out)
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn payloads(&self) -> usize {
        self.payloads
    }

    pub fn morphism_count(&self) -> usize {
        self.targets.len()
    }

    pub fn unit(&self) -> usize {
        0
    }

    #[inline]
    pub fn index(&self, grade: usize, src: usize, payload: usize) -> usize {
        (grade * self.objects + src) * self.payloads + payload
    }

    #[inline]
    pub fn morphism(&self, i: usize) -> Morphism {
        let (n, p) = (self.objects, self.payloads);
        Morphism { src: (i / p) % n, tgt: self.targets[i], payload: i % p, grade: i / (p * n) }
    }

    #[inline]
    pub fn src(&self, i: usize) -> usize {
        (i / self.payloads) % self.objects
    }

    #[inline]
    pub fn tgt(&self, i: usize) -> usize {
        self.targets[i]
    }

    #[inline]
    pub fn grade(&self, i: usize) -> usize {
        i / (self.payloads * self.objects)
    }

    /// Morphisms of grade `σ` out of `x`.
    pub fn hom_range(&self, x: usize, sigma: usize) -> std::ops::Range<usize> {
        let s = self.index(sigma, x, 0);
        s..s + self.payloads
    }

    pub fn hom(&self, x: usize, y: usize, sigma: usize) -> impl Iterator<Item = usize> + '_ {
        self.hom_range(x, sigma).filter(move |&f| self.targets[f] == y)
    }

    #[inline]
    pub fn obj_tensor(&self, x: usize, y: usize) -> usize {
        self.obj_tensor[x * self.objects + y]
    }

    /// `g ∘ f`, defined when `tgt f = src g`.
    #[inline]
    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        let v = self.comp[g * self.morphism_count() + f];
        (v != NONE).then_some(v as usize)
    }

    /// `f ⊗ g`, defined when the grades agree.
    #[inline]
    pub fn tensor(&self, f: usize, g: usize) -> Option<usize> {
        let v = self.tensor[f * self.morphism_count() + g];
        (v != NONE).then_some(v as usize)
    }

    #[inline]
    pub fn id(&self, x: usize) -> usize {
        self.identity[x]
    }

    #[inline]
    pub fn inv(&self, f: usize) -> Option<usize> {
        let v = self.inverse[f];
        (v != NONE).then_some(v as usize)
    }

    #[inline]
    pub fn assoc(&self, x: usize, y: usize, z: usize) -> usize {
        let n = self.objects;
        self.assoc[(x * n + y) * n + z]
    }

    #[inline]
    pub fn left(&self, x: usize) -> usize {
        self.left[x]
    }

    #[inline]
    pub fn right(&self, x: usize) -> usize {
        self.right[x]
    }

    #[inline]
    pub fn braid(&self, x: usize, y: usize) -> usize {
        self.braid[x * self.objects + y]
    }

    #[inline]
    pub fn unit_functor(&self, sigma: usize) -> usize {
        self.unit_functor[sigma]
    }

    /// Composite of a chain listed in diagrammatic order (first applied first).
    pub fn chain(&self, fs: &[Option<usize>]) -> Option<usize> {
        let mut acc = (*fs.first()?)?;
        for f in &fs[1..] {
            acc = self.comp((*f)?, acc)?;
        }
        Some(acc)
    }

    #[inline]
    pub fn tens(&self, f: Option<usize>, g: Option<usize>) -> Option<usize> {
        self.tensor(f?, g?)
    }

    /// Whether `a`, `l`, `r` are identities.
    pub fn is_strict_constraints(&self) -> bool {
        let n = self.objects;
        (0..n).all(|x| self.left[x] == self.identity[x] && self.right[x] == self.identity[x])
            && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| self.assoc(x, y, z) == self.identity[self.obj_tensor(x, self.obj_tensor(y, z))])))
    }

    /// The subcategory of grade-1 morphisms, graded over the trivial group.
    pub fn ker(&self) -> GradedCatGroup {
        let k = self.objects * self.payloads;
        let m = self.morphism_count();
        let restrict = |t: &[u32]| -> Vec<u32> { (0..k).flat_map(|a| t[a * m..a * m + k].iter().copied()).collect() };
        GradedCatGroup {
            gamma: Arc::new(FiniteGroup::trivial()),
            objects: self.objects,
            payloads: self.payloads,
            obj_tensor: self.obj_tensor.clone(),
            targets: self.targets[..k].to_vec(),
            comp: restrict(&self.comp),
            tensor: restrict(&self.tensor),
            identity: self.identity.clone(),
            inverse: self.inverse[..k].to_vec(),
            assoc: self.assoc.clone(),
            left: self.left.clone(),
            right: self.right.clone(),
            braid: self.braid.clone(),
            unit_functor: vec![self.unit_functor[0]],
        }
    }

    pub fn to_json(&self) -> Value {
        let morphisms: Vec<Value> = (0..self.morphism_count())
            .map(|i| {
                let f = self.morphism(i);
                json!([f.src, f.tgt, f.payload, f.grade])
            })
            .collect();
        let n = self.objects;
        json!({
            "objects": n,
            "gamma_order": self.gamma.order(),
            "morphisms": morphisms,
            "tensor": self.obj_tensor.chunks(n).collect::<Vec<_>>(),
            "constraints": {
                "assoc": self.assoc,
                "left": self.left,
                "right": self.right,
                "braid": self.braid,
                "unit": self.unit_functor,
            },
        })
    }
}

/// `𝔾_ℳ`: objects `D`, morphisms `(b,σ): x → y` with `σx = d(b)y`.
pub fn build_catgroup(m: &ValidatedModule) -> GradedCatGroup {
    build_catgroup_unchecked(m).expect("validated modules have tabulable categories")
}

/// The same construction without requiring the axioms; used to observe how
/// broken data shows up in the coherence checker.
pub fn build_catgroup_unchecked(m: &BraidedGammaCrossedModule) -> Result<GradedCatGroup, CatGroupError> {
    let (b, dg) = (&*m.b, &*m.dg);
    let d = |x| m.d.apply(x);
    GradedCatGroup::tabulate(&Structure {
        gamma: m.gamma().clone(),
        objects: dg.order(),
        payloads: b.order(),
        obj_tensor: &|x, y| dg.mul(x, y),
        target: &|x, q, s| dg.mul(dg.inv(d(q)), m.gamma_d.apply(s, x)),
        compose: &|f, g| b.mul(m.gamma_b.apply(g.grade, f.payload), g.payload),
        tensor: &|f, g| b.mul(f.payload, m.theta(f.tgt, g.payload)),
        identity: &|_| 0,
        assoc: &|_, _, _| 0,
        left: &|_| 0,
        right: &|_| 0,
        braid: &|x, y| m.eta(x, y),
        unit_functor: &|_| 0,
    })
}

/// `∫_Γ(M, N, h)` for a normalized 3-cochain `h`. The action of `M` on `N`
/// in the tensor is trivial, as it is for every braided model.
pub fn build_reduced(h: &Cochain3) -> Result<GradedCatGroup, CatGroupError> {
    if let Some(w) = h.normalization_failure() {
        return Err(CatGroupError::ShapeMismatch(format!("3-cochain is not normalized at {w:?}")));
    }
    let (mm, nn) = (&*h.m, &*h.n);
    GradedCatGroup::tabulate(&Structure {
        gamma: mm.gamma().clone(),
        objects: mm.order(),
        payloads: nn.order(),
        obj_tensor: &|x, y| mm.add(x, y),
        target: &|r, _, s| mm.act(s, r),
        compose: &|f, g| nn.add(nn.add(g.payload, nn.act(g.grade, f.payload)), h.comp(f.src, g.grade, f.grade)),
        tensor: &|f, g| nn.add(nn.add(f.payload, g.payload), h.tensor(f.src, g.src, f.grade)),
        identity: &|_| 0,
        assoc: &|r, s, t| h.assoc(r, s, t),
        left: &|_| 0,
        right: &|_| 0,
        braid: &|r, s| h.braid(r, s),
        unit_functor: &|_| 0,
    })
}

/// `Dis_{Γ,s} Q = ∫_Γ(Q, 0, 0)`.
pub fn discrete(q: &Arc<GammaModule>) -> GradedCatGroup {
    let zero = Arc::new(GammaModule::cyclic(1, q.gamma().clone()));
    build_reduced(&Cochain3::zero(q.clone(), zero).expect("same Γ")).expect("zero cochain is normalized")
}

/// Runs `body(i, out)` for each `i` in parallel and concatenates the
/// outputs in index order.
pub(crate) fn collect_par(n: usize, body: impl Fn(usize, &mut Vec<Vec<usize>>) + Sync) -> Vec<Vec<usize>> {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            body(i, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Every coherence axiom, each with its failing tuples in lexicographic order.
pub fn check_axioms(g: &GradedCatGroup) -> Report {
    let (n, m, gm) = (g.objects, g.morphism_count(), &*g.gamma);
    let ng = gm.order();
    let ot = |x, y| g.obj_tensor(x, y);
    let id = |x| Some(g.id(x));
    let mut r = Report::new();

    r.record(
        "composition typing",
        collect_par(m, |f, out| {
            let fm = g.morphism(f);
            for gg in 0..m {
                let gmr = g.morphism(gg);
                let ok = match g.comp(gg, f) {
                    None => fm.tgt != gmr.src,
                    Some(h) => {
                        let hm = g.morphism(h);
                        fm.tgt == gmr.src && hm.src == fm.src && hm.tgt == gmr.tgt && hm.grade == gm.mul(gmr.grade, fm.grade)
                    }
                };
                if !ok {
                    out.push(vec![f, gg]);
                }
            }
        }),
    );
    r.record(
        "composition associativity",
        collect_par(m, |f, out| {
            for s in 0..ng {
                for gg in g.hom_range(g.tgt(f), s) {
                    for t in 0..ng {
                        for h in g.hom_range(g.tgt(gg), t) {
                            let lhs = g.comp(gg, f).and_then(|gf| g.comp(h, gf));
                            let rhs = g.comp(h, gg).and_then(|hg| g.comp(hg, f));
                            if lhs.is_none() || lhs != rhs {
                                out.push(vec![f, gg, h]);
                            }
                        }
                    }
                }
            }
        }),
    );
    r.record(
        "identities",
        collect_par(m, |f, out| {
            let fm = g.morphism(f);
            let ids_ok = g.morphism(g.id(fm.src)).tgt == fm.src && g.grade(g.id(fm.src)) == 0;
            if !ids_ok || g.comp(g.id(fm.tgt), f) != Some(f) || g.comp(f, g.id(fm.src)) != Some(f) {
                out.push(vec![f]);
            }
        }),
    );
    r.record("invertibility", (0..m).filter(|&f| g.inv(f).is_none()).map(|f| vec![f]));
    r.record(
        "tensor typing",
        collect_par(m, |f, out| {
            let fm = g.morphism(f);
            for gg in 0..m {
                let gmr = g.morphism(gg);
                let ok = match g.tensor(f, gg) {
                    None => fm.grade != gmr.grade,
                    Some(h) => {
                        let hm = g.morphism(h);
                        hm.src == ot(fm.src, gmr.src) && hm.tgt == ot(fm.tgt, gmr.tgt) && hm.grade == fm.grade
                    }
                };
                if !ok {
                    out.push(vec![f, gg]);
                }
            }
        }),
    );
    r.record(
        "tensor identities",
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| g.tens(id(x), id(y)) != id(ot(x, y))).map(|(x, y)| vec![x, y]),
    );
    r.record(
        "tensor bifunctoriality",
        collect_par(m, |f, out| {
            let s = g.grade(f);
            for f2 in (0..n).flat_map(|x| g.hom_range(x, s)) {
                for t in 0..ng {
                    for gg in g.hom_range(g.tgt(f), t) {
                        for g2 in g.hom_range(g.tgt(f2), t) {
                            let lhs = g.tens(g.comp(gg, f), g.comp(g2, f2));
                            let rhs = g.chain(&[g.tensor(f, f2), g.tensor(gg, g2)]);
                            if lhs.is_none() || lhs != rhs {
                                out.push(vec![f, f2, gg, g2]);
                            }
                        }
                    }
                }
            }
        }),
    );
    r.record(
        "unit functor",
        (0..ng)
            .flat_map(|s| (0..ng).map(move |t| (s, t)))
            .filter(|&(s, t)| {
                let is = g.morphism(g.unit_functor(s));
                let typed = is.src == 0 && is.tgt == 0 && is.grade == s;
                let unital = s != 0 || g.unit_functor(0) == g.id(0);
                !typed || !unital || g.comp(g.unit_functor(t), g.unit_functor(s)) != Some(g.unit_functor(gm.mul(t, s)))
            })
            .map(|(s, t)| vec![s, t]),
    );
    let typed = |f: usize, src: usize, tgt: usize| {
        let fm = g.morphism(f);
        fm.src == src && fm.tgt == tgt && fm.grade == 0
    };
    let mut ct = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !typed(g.assoc(x, y, z), ot(ot(x, y), z), ot(x, ot(y, z))) {
                    ct.push(vec![0, x, y, z]);
                }
            }
        }
    }
    for x in 0..n {
        if !typed(g.left(x), ot(0, x), x) {
            ct.push(vec![1, x]);
        }
    }
    for x in 0..n {
        if !typed(g.right(x), ot(x, 0), x) {
            ct.push(vec![2, x]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !typed(g.braid(x, y), ot(x, y), ot(y, x)) {
                ct.push(vec![3, x, y]);
            }
        }
    }
    r.record("constraint typing", ct);

    r.record(
        "naturality of a",
        collect_par(m, |f, out| {
            let s = g.grade(f);
            for f2 in (0..n).flat_map(|x| g.hom_range(x, s)) {
                for f3 in (0..n).flat_map(|x| g.hom_range(x, s)) {
                    let (a, b, c) = (g.morphism(f), g.morphism(f2), g.morphism(f3));
                    let lhs = g.chain(&[g.tens(g.tensor(f, f2), Some(f3)), Some(g.assoc(a.tgt, b.tgt, c.tgt))]);
                    let rhs = g.chain(&[Some(g.assoc(a.src, b.src, c.src)), g.tens(Some(f), g.tensor(f2, f3))]);
                    if lhs.is_none() || lhs != rhs {
                        out.push(vec![f, f2, f3]);
                    }
                }
            }
        }),
    );
    r.record(
        "naturality of l",
        (0..m).filter_map(|f| {
            let fm = g.morphism(f);
            let lhs = g.chain(&[g.tensor(g.unit_functor(fm.grade), f), Some(g.left(fm.tgt))]);
            let rhs = g.chain(&[Some(g.left(fm.src)), Some(f)]);
            (lhs.is_none() || lhs != rhs).then(|| vec![f])
        }),
    );
    r.record(
        "naturality of r",
        (0..m).filter_map(|f| {
            let fm = g.morphism(f);
            let lhs = g.chain(&[g.tensor(f, g.unit_functor(fm.grade)), Some(g.right(fm.tgt))]);
            let rhs = g.chain(&[Some(g.right(fm.src)), Some(f)]);
            (lhs.is_none() || lhs != rhs).then(|| vec![f])
        }),
    );
    r.record(
        "naturality of c",
        collect_par(m, |f, out| {
            let s = g.grade(f);
            for f2 in (0..n).flat_map(|x| g.hom_range(x, s)) {
                let (a, b) = (g.morphism(f), g.morphism(f2));
                let lhs = g.chain(&[g.tensor(f, f2), Some(g.braid(a.tgt, b.tgt))]);
                let rhs = g.chain(&[Some(g.braid(a.src, b.src)), g.tensor(f2, f)]);
                if lhs.is_none() || lhs != rhs {
                    out.push(vec![f, f2]);
                }
            }
        }),
    );
    let a = |x, y, z| Some(g.assoc(x, y, z));
    let ainv = |x, y, z| g.inv(g.assoc(x, y, z));
    let c = |x, y| Some(g.braid(x, y));
    r.record(
        "pentagon",
        collect_par(n, |x, out| {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let lhs = g.chain(&[a(ot(x, y), z, w), a(x, y, ot(z, w))]);
                        let rhs = g.chain(&[g.tens(a(x, y, z), id(w)), a(x, ot(y, z), w), g.tens(id(x), a(y, z, w))]);
                        if lhs.is_none() || lhs != rhs {
                            out.push(vec![x, y, z, w]);
                        }
                    }
                }
            }
        }),
    );
    r.record(
        "triangle",
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter_map(|(x, y)| {
            let lhs = g.chain(&[a(x, 0, y), g.tens(id(x), Some(g.left(y)))]);
            let rhs = g.tens(Some(g.right(x)), id(y));
            (lhs.is_none() || lhs != rhs).then(|| vec![x, y])
        }),
    );
    r.record(
        "hexagon",
        collect_par(n, |x, out| {
            for y in 0..n {
                for z in 0..n {
                    let lhs = g.chain(&[g.tens(c(x, y), id(z)), a(y, x, z), g.tens(id(y), c(x, z))]);
                    let rhs = g.chain(&[a(x, y, z), c(x, ot(y, z)), a(y, z, x)]);
                    if lhs.is_none() || lhs != rhs {
                        out.push(vec![x, y, z]);
                    }
                }
            }
        }),
    );
    r.record(
        "inverse hexagon",
        collect_par(n, |x, out| {
            for y in 0..n {
                for z in 0..n {
                    let lhs = g.chain(&[g.tens(id(x), c(y, z)), ainv(x, z, y), g.tens(c(x, z), id(y))]);
                    let rhs = g.chain(&[ainv(x, y, z), c(ot(x, y), z), ainv(z, x, y)]);
                    if lhs.is_none() || lhs != rhs {
                        out.push(vec![x, y, z]);
                    }
                }
            }
        }),
    );
    r.record(
        "object invertibility",
        (0..n)
            .filter(|&x| !(0..n).any(|y| g.hom_range(ot(x, y), 0).any(|f| g.tgt(f) == 0)))
            .map(|x| vec![x]),
    );
    r.record(
        "grading stability",
        (0..n).flat_map(|x| (0..ng).map(move |s| (x, s))).filter(|&(x, s)| g.hom_range(x, s).next().is_none()).map(|(x, s)| vec![x, s]),
    );
    r
}

/// `c_{y,x} ∘ c_{x,y} = id`.
pub fn check_symmetry(g: &GradedCatGroup) -> Report {
    let n = g.objects;
    let mut r = Report::new();
    r.record(
        "symmetry",
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| g.comp(g.braid(y, x), g.braid(x, y)) != Some(g.id(g.obj_tensor(x, y))))
            .map(|(x, y)| vec![x, y]),
    );
    r
}

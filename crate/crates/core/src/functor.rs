// SPDX-License-Identifier: Apache-2.0

//! Graded symmetric monoidal functors between tabulated categorical groups:
//! coherence, regularity, homotopies, factor sets, and the translation
//! between crossed-module morphisms and regular functors.

use std::sync::Arc;

use thiserror::Error;

use crate::catgroup::{collect_par, GradedCatGroup};
use crate::cohomology::SymmetricCochain2;
use crate::crossed::{BraidedGammaCrossedModule, CrossedError, CrossedMorphism, ValidatedModule};
use crate::group::{FiniteGroup, GroupHom};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("functor is not regular:\n{0}")]
    NotRegular(Report),
    #[error("functor is not coherent:\n{0}")]
    NotCoherent(Report),
    #[error("f is not constant on cosets of Im d at ({x}, {y})")]
    FNotConstantOnCosets { x: usize, y: usize },
    #[error("constraint {0} is not an identity")]
    NotStrict(String),
    #[error("induced factor set is not regular:\n{0}")]
    NotRegularFactorSet(Report),
    #[error("choice for (σ={sigma}, X={x}) has the wrong grade or source")]
    BadChoice { sigma: usize, x: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
}

/// `(F, F̃, F_*)` as tables of target indices. `tilde[x·|Ob| + y]` is
/// `F̃_{x,y}: FX ⊗ FY → F(X⊗Y)`; `unit` is `F_*: I′ → F(I)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedFunctor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
    pub tilde: Vec<usize>,
    pub unit: usize,
}

impl GradedFunctor {
    pub fn identity(g: &GradedCatGroup) -> Self {
        let n = g.objects();
        GradedFunctor {
            objects: (0..n).collect(),
            morphisms: (0..g.morphism_count()).collect(),
            tilde: (0..n * n).map(|i| g.id(g.obj_tensor(i / n, i % n))).collect(),
            unit: g.id(0),
        }
    }

    #[inline]
    pub fn tilde(&self, x: usize, y: usize) -> usize {
        self.tilde[x * self.objects.len() + y]
    }
}

/// Functoriality, grading, and coherence with `a`, `l`, `r`, `c`.
pub fn check_graded_functor(f: &GradedFunctor, g: &GradedCatGroup, h: &GradedCatGroup) -> Report {
    let mut r = Report::new();
    let (n, m) = (g.objects(), g.morphism_count());
    let shapes = f.objects.len() == n
        && f.morphisms.len() == m
        && f.tilde.len() == n * n
        && f.objects.iter().all(|&x| x < h.objects())
        && f.morphisms.iter().all(|&x| x < h.morphism_count())
        && f.tilde.iter().all(|&x| x < h.morphism_count())
        && f.unit < h.morphism_count()
        && g.gamma == h.gamma;
    r.record_bool("shapes", shapes);
    if !shapes {
        return r;
    }
    let fo = |x: usize| f.objects[x];
    let fm = |a: usize| f.morphisms[a];
    let ft = |x: usize, y: usize| Some(f.tilde(x, y));
    r.record(
        "morphism typing",
        (0..m).filter_map(|a| {
            let (s, t) = (g.morphism(a), h.morphism(fm(a)));
            (t.src != fo(s.src) || t.tgt != fo(s.tgt) || t.grade != s.grade).then(|| vec![a])
        }),
    );
    r.record("identities", (0..n).filter(|&x| fm(g.id(x)) != h.id(fo(x))).map(|x| vec![x]));
    r.record(
        "functoriality",
        collect_par(m, |a, out| {
            for s in 0..g.gamma.order() {
                for b in g.hom_range(g.tgt(a), s) {
                    let lhs = g.comp(b, a).map(fm);
                    if lhs.is_none() || lhs != h.comp(fm(b), fm(a)) {
                        out.push(vec![a, b]);
                    }
                }
            }
        }),
    );
    let typed1 = |k: usize, src: usize, tgt: usize| {
        let km = h.morphism(k);
        km.src == src && km.tgt == tgt && km.grade == 0
    };
    let mut tt = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !typed1(f.tilde(x, y), h.obj_tensor(fo(x), fo(y)), fo(g.obj_tensor(x, y))) {
                tt.push(vec![x, y]);
            }
        }
    }
    r.record("tilde typing", tt);
    r.record_bool("unit typing", typed1(f.unit, 0, fo(0)));
    if !r.passed() {
        return r;
    }
    r.record(
        "tilde naturality",
        collect_par(m, |a, out| {
            let s = g.grade(a);
            for b in (0..n).flat_map(|x| g.hom_range(x, s)) {
                let (am, bm) = (g.morphism(a), g.morphism(b));
                let lhs = h.chain(&[h.tensor(fm(a), fm(b)), ft(am.tgt, bm.tgt)]);
                let rhs = h.chain(&[ft(am.src, bm.src), g.tensor(a, b).map(fm)]);
                if lhs.is_none() || lhs != rhs {
                    out.push(vec![a, b]);
                }
            }
        }),
    );
    let ot = |x, y| g.obj_tensor(x, y);
    r.record(
        "associativity coherence",
        collect_par(n, |x, out| {
            for y in 0..n {
                for z in 0..n {
                    let lhs = h.chain(&[h.tens(ft(x, y), Some(h.id(fo(z)))), ft(ot(x, y), z), Some(fm(g.assoc(x, y, z)))]);
                    let rhs = h.chain(&[Some(h.assoc(fo(x), fo(y), fo(z))), h.tens(Some(h.id(fo(x))), ft(y, z)), ft(x, ot(y, z))]);
                    if lhs.is_none() || lhs != rhs {
                        out.push(vec![x, y, z]);
                    }
                }
            }
        }),
    );
    r.record(
        "unit coherence",
        (0..n).flat_map(|x| [(0, x), (1, x)]).filter_map(|(side, x)| {
            let (lhs, rhs) = if side == 0 {
                (h.chain(&[h.tens(Some(f.unit), Some(h.id(fo(x)))), ft(0, x), Some(fm(g.left(x)))]), Some(h.left(fo(x))))
            } else {
                (h.chain(&[h.tens(Some(h.id(fo(x))), Some(f.unit)), ft(x, 0), Some(fm(g.right(x)))]), Some(h.right(fo(x))))
            };
            (lhs.is_none() || lhs != rhs).then(|| vec![side, x])
        }),
    );
    r.record(
        "braiding coherence",
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter_map(|(x, y)| {
            let lhs = h.chain(&[Some(h.braid(fo(x), fo(y))), ft(y, x)]);
            let rhs = h.chain(&[ft(x, y), Some(fm(g.braid(x, y)))]);
            (lhs.is_none() || lhs != rhs).then(|| vec![x, y])
        }),
    );
    r
}

/// The grade-`σ` morphism out of `x` with payload 0.
#[inline]
pub fn canonical_upsilon(g: &GradedCatGroup, sigma: usize, x: usize) -> usize {
    g.index(sigma, x, 0)
}

/// `σx` through the canonical choice.
#[inline]
pub fn act_object(g: &GradedCatGroup, sigma: usize, x: usize) -> usize {
    g.tgt(canonical_upsilon(g, sigma, x))
}

/// `σb = Υ_{tgt b} ∘ b ∘ Υ_{src b}⁻¹` for a grade-1 morphism `b`.
pub fn act_morphism(g: &GradedCatGroup, sigma: usize, b: usize) -> Option<usize> {
    let bm = g.morphism(b);
    g.chain(&[g.inv(canonical_upsilon(g, sigma, bm.src)), Some(b), Some(canonical_upsilon(g, sigma, bm.tgt))])
}

/// Conditions B1–B5 between strict categories, with the Γ-actions on objects
/// and on grade-1 morphisms into the unit taken from the payload-0 choices.
pub fn regularity(f: &GradedFunctor, g: &GradedCatGroup, h: &GradedCatGroup) -> Report {
    let (n, ng) = (g.objects(), g.gamma.order());
    let k = n * g.payloads();
    let fo = |x: usize| f.objects[x];
    let fm = |a: usize| f.morphisms[a];
    let mut r = Report::new();
    r.record(
        "B1",
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| h.obj_tensor(fo(x), fo(y)) != fo(g.obj_tensor(x, y))).map(|(x, y)| vec![x, y]),
    );
    r.record(
        "B2",
        collect_par(k, |a, out| {
            for b in 0..k {
                if g.tensor(a, b).map(fm) != h.tensor(fm(a), fm(b)) {
                    out.push(vec![a, b]);
                }
            }
        }),
    );
    r.record(
        "B3",
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| h.morphism(f.tilde(x, y)).payload != h.morphism(f.tilde(y, x)).payload)
            .map(|(x, y)| vec![x, y]),
    );
    r.record(
        "B4",
        (0..ng).flat_map(|s| (0..n).map(move |x| (s, x))).filter(|&(s, x)| fo(act_object(g, s, x)) != act_object(h, s, fo(x))).map(|(s, x)| vec![s, x]),
    );
    r.record(
        "B5",
        (0..ng)
            .flat_map(|s| (0..k).map(move |b| (s, b)))
            .filter(|&(_, b)| g.tgt(b) == 0)
            .filter(|&(s, b)| act_morphism(g, s, b).map(fm) != act_morphism(h, s, fm(b)))
            .map(|(s, b)| vec![s, b]),
    );
    r
}

pub fn is_regular(f: &GradedFunctor, g: &GradedCatGroup, h: &GradedCatGroup) -> bool {
    regularity(f, g, h).passed()
}

/// Naturality of `θ_X: FX → F′X` and the two equations tying it to `F̃`, `F_*`.
pub fn homotopy_report(theta: &[usize], f: &GradedFunctor, f2: &GradedFunctor, g: &GradedCatGroup, h: &GradedCatGroup) -> Report {
    let (n, m) = (g.objects(), g.morphism_count());
    let mut r = Report::new();
    let typed = theta.len() == n
        && (0..n).all(|x| {
            theta[x] < h.morphism_count() && {
                let t = h.morphism(theta[x]);
                t.src == f.objects[x] && t.tgt == f2.objects[x] && t.grade == 0
            }
        });
    r.record_bool("homotopy typing", typed);
    if !typed {
        return r;
    }
    r.record(
        "homotopy naturality",
        (0..m).filter_map(|a| {
            let am = g.morphism(a);
            let lhs = h.comp(f2.morphisms[a], theta[am.src]);
            (lhs.is_none() || lhs != h.comp(theta[am.tgt], f.morphisms[a])).then(|| vec![a])
        }),
    );
    r.record(
        "homotopy tensor",
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter_map(|(x, y)| {
            let lhs = h.chain(&[h.tensor(theta[x], theta[y]), Some(f2.tilde(x, y))]);
            let rhs = h.chain(&[Some(f.tilde(x, y)), Some(theta[g.obj_tensor(x, y)])]);
            (lhs.is_none() || lhs != rhs).then(|| vec![x, y])
        }),
    );
    r.record_bool("homotopy unit", h.comp(theta[0], f.unit) == Some(f2.unit));
    r
}

pub fn is_homotopy(theta: &[usize], f: &GradedFunctor, f2: &GradedFunctor, g: &GradedCatGroup, h: &GradedCatGroup) -> bool {
    homotopy_report(theta, f, f2, g, h).passed()
}

/// The functor `F′` reached from `F` along the grade-1 family `θ_X: FX → F′X`.
pub fn transport(theta: &[usize], f: &GradedFunctor, g: &GradedCatGroup, h: &GradedCatGroup) -> Option<GradedFunctor> {
    let n = g.objects();
    let objects = theta.iter().map(|&t| h.tgt(t)).collect();
    let morphisms = (0..g.morphism_count())
        .map(|a| {
            let am = g.morphism(a);
            h.chain(&[h.inv(theta[am.src]), Some(f.morphisms[a]), Some(theta[am.tgt])])
        })
        .collect::<Option<Vec<_>>>()?;
    let tilde = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            h.chain(&[h.inv(h.tensor(theta[x], theta[y])?), Some(f.tilde[i]), Some(theta[g.obj_tensor(x, y)])])
        })
        .collect::<Option<Vec<_>>>()?;
    Some(GradedFunctor { objects, morphisms, tilde, unit: h.comp(theta[0], f.unit)? })
}

/// `(F^σ, θ^{σ,τ})` on `Ker 𝔾` with `θ^{σ,τ}_X: F^σF^τX → F^{στ}X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    pub choices: Vec<usize>,
    pub functors: Vec<GradedFunctor>,
    pub theta: Vec<usize>,
}

impl FactorSet {
    pub fn theta(&self, sigma: usize, tau: usize, x: usize) -> usize {
        let (ng, n) = (self.functors.len(), self.functors[0].objects.len());
        self.theta[(sigma * ng + tau) * n + x]
    }
}

/// The payload-0 choices `Υ^σ_X`.
pub fn canonical_choices(g: &GradedCatGroup) -> Vec<usize> {
    let n = g.objects();
    (0..g.gamma.order() * n).map(|i| if i < n { g.id(i) } else { canonical_upsilon(g, i / n, i % n) }).collect()
}

/// `choices[σ·|Ob| + X]` is a grade-σ morphism out of `X`, the identity for `σ = 1`.
pub fn extract_factor_set(g: &GradedCatGroup, choices: &[usize]) -> Result<FactorSet, FunctorError> {
    let (n, ng) = (g.objects(), g.gamma.order());
    if choices.len() != n * ng {
        return Err(FunctorError::ShapeMismatch(format!("expected {} choices", n * ng)));
    }
    for s in 0..ng {
        for x in 0..n {
            let u = choices[s * n + x];
            let ok = u < g.morphism_count() && g.src(u) == x && g.grade(u) == s && (s != 0 || u == g.id(x));
            if !ok {
                return Err(FunctorError::BadChoice { sigma: s, x });
            }
        }
    }
    let k = n * g.payloads();
    let ups = |s: usize, x: usize| choices[s * n + x];
    let bad = || FunctorError::ShapeMismatch("category is not a groupoid".into());
    let mut functors = Vec::with_capacity(ng);
    for s in 0..ng {
        let objects: Vec<usize> = (0..n).map(|x| g.tgt(ups(s, x))).collect();
        let morphisms = (0..k)
            .map(|a| {
                let am = g.morphism(a);
                g.chain(&[g.inv(ups(s, am.src)), Some(a), Some(ups(s, am.tgt))])
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        let tilde = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                g.chain(&[g.inv(g.tensor(ups(s, x), ups(s, y))?), Some(ups(s, g.obj_tensor(x, y)))])
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        let unit = g.chain(&[g.inv(g.unit_functor(s)), Some(ups(s, 0))]).ok_or_else(bad)?;
        functors.push(GradedFunctor { objects, morphisms, tilde, unit });
    }
    let mut theta = Vec::with_capacity(ng * ng * n);
    for s in 0..ng {
        for t in 0..ng {
            for x in 0..n {
                let ftx = functors[t].objects[x];
                let th = g
                    .chain(&[g.inv(ups(s, ftx)), g.inv(ups(t, x)), Some(ups(g.gamma.mul(s, t), x))])
                    .ok_or_else(bad)?;
                theta.push(th);
            }
        }
    }
    Ok(FactorSet { choices: choices.to_vec(), functors, theta })
}

/// Each `F^σ` a symmetric monoidal functor on `Ker 𝔾`, `F¹ = id`, `θ`
/// monoidal-natural and normalized, and the cocycle square.
pub fn check_factor_set(g: &GradedCatGroup, fs: &FactorSet) -> Report {
    let (n, ng, gm) = (g.objects(), g.gamma.order(), &*g.gamma);
    let k = n * g.payloads();
    let kg = g.ker();
    let mut r = Report::new();
    let mut fails = Vec::new();
    for (s, f) in fs.functors.iter().enumerate() {
        for c in check_graded_functor(f, &kg, &kg).failed() {
            fails.push(vec![s, c.witnesses.first().map_or(0, |w| w.first().copied().unwrap_or(0))]);
        }
    }
    r.record("F^sigma functors", fails);
    r.record_bool("F^1 identity", fs.functors[0] == GradedFunctor::identity(&kg));
    let f = |s: usize| &fs.functors[s];
    let th = |s, t, x| fs.theta(s, t, x);
    let triples = || (0..ng).flat_map(move |s| (0..ng).flat_map(move |t| (0..n).map(move |x| (s, t, x))));
    r.record(
        "theta typing",
        triples()
            .filter(|&(s, t, x)| {
                let m = g.morphism(th(s, t, x));
                m.grade != 0 || m.src != f(s).objects[f(t).objects[x]] || m.tgt != f(gm.mul(s, t)).objects[x]
            })
            .map(|(s, t, x)| vec![s, t, x]),
    );
    if !r.passed() {
        return r;
    }
    r.record(
        "theta normalized",
        (0..ng)
            .flat_map(|s| (0..n).map(move |x| (s, x)))
            .filter(|&(s, x)| th(0, s, x) != g.id(f(s).objects[x]) || th(s, 0, x) != g.id(f(s).objects[x]))
            .map(|(s, x)| vec![s, x]),
    );
    let mut nat = Vec::new();
    for s in 0..ng {
        for t in 0..ng {
            for a in 0..k {
                let am = g.morphism(a);
                let lhs = g.comp(th(s, t, am.tgt), f(s).morphisms[f(t).morphisms[a]]);
                let rhs = g.comp(f(gm.mul(s, t)).morphisms[a], th(s, t, am.src));
                if lhs.is_none() || lhs != rhs {
                    nat.push(vec![s, t, a]);
                }
            }
        }
    }
    r.record("theta natural", nat);
    let mut mon = Vec::new();
    for s in 0..ng {
        for t in 0..ng {
            let st = gm.mul(s, t);
            for x in 0..n {
                for y in 0..n {
                    let (tx, ty) = (f(t).objects[x], f(t).objects[y]);
                    let lhs = g.chain(&[Some(f(s).tilde(tx, ty)), Some(f(s).morphisms[f(t).tilde(x, y)]), Some(th(s, t, g.obj_tensor(x, y)))]);
                    let rhs = g.chain(&[g.tensor(th(s, t, x), th(s, t, y)), Some(f(st).tilde(x, y))]);
                    if lhs.is_none() || lhs != rhs {
                        mon.push(vec![s, t, x, y]);
                    }
                }
            }
        }
    }
    r.record("theta monoidal", mon);
    let mut sq = Vec::new();
    for s in 0..ng {
        for t in 0..ng {
            for u in 0..ng {
                for x in 0..n {
                    let lhs = g.comp(th(gm.mul(s, t), u, x), th(s, t, f(u).objects[x]));
                    let rhs = g.comp(th(s, gm.mul(t, u), x), f(s).morphisms[th(t, u, x)]);
                    if lhs.is_none() || lhs != rhs {
                        sq.push(vec![s, t, u, x]);
                    }
                }
            }
        }
    }
    r.record("cocycle square", sq);
    r
}

/// `θ ≡ id` and each `F^σ` regular on `Ker 𝔾`.
pub fn factor_set_regularity(g: &GradedCatGroup, fs: &FactorSet) -> Report {
    let kg = g.ker();
    let mut r = Report::new();
    r.record("theta identity", (0..fs.theta.len()).filter(|&i| g.src(fs.theta[i]) != g.tgt(fs.theta[i]) || fs.theta[i] != g.id(g.src(fs.theta[i]))).map(|i| vec![i]));
    r.record(
        "F^sigma regular",
        fs.functors.iter().enumerate().filter(|(_, f)| !is_regular(f, &kg, &kg)).map(|(s, _)| vec![s]),
    );
    r
}

/// `Φ(f₁, f₀, φ)`: `F(x) = f₀x`, `F(b,σ)_x = (φ(px,σ) + f₁b, σ)`,
/// `F̃_{x,y} = (φ(px,py), 1)`, `F_* = id`.
pub fn morphism_to_functor(mor: &CrossedMorphism, m: &ValidatedModule, m2: &ValidatedModule) -> GradedFunctor {
    let (p0, k1) = (m.pi0(), m2.pi1());
    let (nd, nb, ng) = (m.dg.order(), m.b.order(), m.gamma().order());
    let (nd2, nb2) = (m2.dg.order(), m2.b.order());
    let idx2 = |s: usize, x: usize, p: usize| (s * nd2 + x) * nb2 + p;
    let px = |x| p0.proj.apply(x);
    let ker = |k| k1.incl.apply(k);
    let objects: Vec<usize> = (0..nd).map(|x| mor.f0.apply(x)).collect();
    let mut morphisms = Vec::with_capacity(ng * nd * nb);
    for s in 0..ng {
        for x in 0..nd {
            for b in 0..nb {
                let p = m2.b.mul(ker(mor.phi.grade(px(x), s)), mor.f1.apply(b));
                morphisms.push(idx2(s, objects[x], p));
            }
        }
    }
    let tilde = (0..nd * nd)
        .map(|i| {
            let (x, y) = (i / nd, i % nd);
            idx2(0, m2.dg.mul(objects[x], objects[y]), ker(mor.phi.pair(px(x), px(y))))
        })
        .collect();
    GradedFunctor { objects, morphisms, tilde, unit: idx2(0, 0, 0) }
}

/// The inverse of [`morphism_to_functor`] on regular coherent functors.
pub fn functor_to_morphism(f: &GradedFunctor, m: &ValidatedModule, m2: &ValidatedModule) -> Result<CrossedMorphism, FunctorError> {
    let (g, h) = (crate::catgroup::build_catgroup(m), crate::catgroup::build_catgroup(m2));
    let coherent = check_graded_functor(f, &g, &h);
    if !coherent.passed() {
        return Err(FunctorError::NotCoherent(coherent));
    }
    let reg = regularity(f, &g, &h);
    if !reg.passed() {
        return Err(FunctorError::NotRegular(reg));
    }
    let (nd, nb, ng) = (m.dg.order(), m.b.order(), m.gamma().order());
    let f0 = GroupHom::new_unchecked(m.dg.clone(), m2.dg.clone(), f.objects.clone());
    let f1 = GroupHom::new_unchecked(m.b.clone(), m2.b.clone(), (0..nb).map(|b| h.morphism(f.morphisms[g.index(0, m.d.apply(b), b)]).payload).collect());
    let (p0, k1) = (m.pi0(), m2.pi1());
    let reps = p0.representatives();
    let q = p0.module.order();
    let kidx = |payload: usize, x: usize, y: usize| k1.index_of(payload).ok_or(FunctorError::FNotConstantOnCosets { x, y });
    let fpair = |x: usize, y: usize| h.morphism(f.tilde(x, y)).payload;
    let fgrade = |x: usize, s: usize| h.morphism(f.morphisms[g.index(s, x, 0)]).payload;
    for x in 0..nd {
        for y in 0..nd {
            if fpair(x, y) != fpair(reps[p0.proj.apply(x)], reps[p0.proj.apply(y)]) {
                return Err(FunctorError::FNotConstantOnCosets { x, y });
            }
        }
        for s in 0..ng {
            if fgrade(x, s) != fgrade(reps[p0.proj.apply(x)], s) {
                return Err(FunctorError::FNotConstantOnCosets { x, y: q + s });
            }
        }
    }
    let pair = (0..q).map(|u| (0..q).map(|v| kidx(fpair(reps[u], reps[v]), reps[u], reps[v])).collect()).collect::<Result<Vec<Vec<_>>, _>>()?;
    let grade = (0..q).map(|u| (0..ng).map(|s| kidx(fgrade(reps[u], s), reps[u], q + s)).collect()).collect::<Result<Vec<Vec<_>>, _>>()?;
    let phi = SymmetricCochain2::from_tables(p0.module.clone(), k1.module.clone(), &pair, &grade)
        .map_err(|e| FunctorError::ShapeMismatch(e.to_string()))?;
    Ok(CrossedMorphism { f1, f0, phi })
}

/// `ℳ_𝔾`: `D = Ob 𝔾`, `B` the grade-1 arrows into the unit ordered by
/// `(payload, source)`, `d` = source, `ϑ_y b = id_y ⊗ b ⊗ id_{y⁻¹}`,
/// `η(x,y) = c_{x,y} ⊗ id_{x⁻¹} ⊗ id_{y⁻¹}`.
pub fn catgroup_to_crossed(g: &GradedCatGroup) -> Result<ValidatedModule, FunctorError> {
    if !g.is_strict_constraints() {
        return Err(FunctorError::NotStrict("a, l or r".into()));
    }
    let n = g.objects();
    let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| g.obj_tensor(x, y)).collect()).collect();
    let dg = Arc::new(FiniteGroup::from_table(&rows).map_err(|e| FunctorError::NotStrict(format!("object tensor: {e}")))?);
    let mut bs: Vec<usize> = (0..n * g.payloads()).filter(|&a| g.tgt(a) == 0).collect();
    bs.sort_by_key(|&a| (g.morphism(a).payload, g.src(a)));
    let mut pos = vec![usize::MAX; g.morphism_count()];
    bs.iter().enumerate().for_each(|(i, &a)| pos[a] = i);
    let ix = |a: Option<usize>| a.map(|a| pos[a]).filter(|&i| i != usize::MAX).ok_or_else(|| FunctorError::ShapeMismatch("tensor leaves the arrows into the unit".into()));
    let b_rows = bs.iter().map(|&a| bs.iter().map(|&c| ix(g.tensor(a, c))).collect()).collect::<Result<Vec<Vec<_>>, _>>()?;
    let b = Arc::new(FiniteGroup::from_table(&b_rows).map_err(|e| FunctorError::ShapeMismatch(format!("arrows into the unit: {e}")))?);
    let d: Vec<usize> = bs.iter().map(|&a| g.src(a)).collect();
    let id = |x| Some(g.id(x));
    let theta = (0..n)
        .map(|y| bs.iter().map(|&a| ix(g.tens(g.tens(id(y), Some(a)), id(dg.inv(y))))).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let eta = (0..n)
        .map(|x| (0..n).map(|y| ix(g.tens(g.tens(Some(g.braid(x, y)), id(dg.inv(x))), id(dg.inv(y))))).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let ng = g.gamma.order();
    let act_d: Vec<Vec<usize>> = (0..ng).map(|s| (0..n).map(|x| act_object(g, s, x)).collect()).collect();
    let act_b = (0..ng).map(|s| bs.iter().map(|&a| ix(act_morphism(g, s, a))).collect()).collect::<Result<Vec<Vec<_>>, _>>()?;
    let fs = extract_factor_set(g, &canonical_choices(g))?;
    let reg = factor_set_regularity(g, &fs);
    if !reg.passed() {
        return Err(FunctorError::NotRegularFactorSet(reg));
    }
    let m = BraidedGammaCrossedModule::from_parts(b, dg, d, &theta, &eta, g.gamma.clone(), &act_b, &act_d)?;
    Ok(m.validated()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catgroup::{build_catgroup, check_axioms};
    use crate::crossed::{conjugation_module, validate_morphism};
    use crate::group::GammaAction;

    fn s3_z2() -> ValidatedModule {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let conj: Vec<usize> = s3.elements().map(|x| s3.conj(t, x)).collect();
        let act = GammaAction::involution(s3.clone(), &conj).unwrap();
        conjugation_module(s3.clone(), &act, &s3.commutator_subgroup()).unwrap()
    }

    /// `ℤ/4 →(·2) ℤ/4`, Γ = ℤ/2 by negation: Coker d = Ker d = ℤ/2.
    fn doubling() -> ValidatedModule {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let neg = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]];
        BraidedGammaCrossedModule::from_parts(
            z4.clone(),
            z4.clone(),
            vec![0, 2, 0, 2],
            &vec![vec![0, 1, 2, 3]; 4],
            &vec![vec![0; 4]; 4],
            Arc::new(FiniteGroup::cyclic(2)),
            &neg,
            &neg,
        )
        .unwrap()
        .validated()
        .unwrap()
    }

    #[test]
    fn identity_functor_is_coherent_and_regular() {
        for m in [s3_z2(), doubling()] {
            let g = build_catgroup(&m);
            let id = GradedFunctor::identity(&g);
            assert!(check_graded_functor(&id, &g, &g).passed());
            assert!(is_regular(&id, &g, &g));
            assert_eq!(morphism_to_functor(&CrossedMorphism::identity(&m), &m, &m), id);
            assert_eq!(functor_to_morphism(&id, &m, &m).unwrap(), CrossedMorphism::identity(&m));
        }
    }

    #[test]
    fn canonical_factor_set() {
        for m in [s3_z2(), doubling()] {
            let g = build_catgroup(&m);
            let fs = extract_factor_set(&g, &canonical_choices(&g)).unwrap();
            let r = check_factor_set(&g, &fs);
            assert!(r.passed(), "{r}");
            assert!(factor_set_regularity(&g, &fs).passed());
            for s in 0..g.gamma.order() {
                for x in 0..g.objects() {
                    assert_eq!(fs.functors[s].objects[x], m.gamma_d.apply(s, x));
                }
            }
        }
    }

    #[test]
    fn perturbed_factor_set() {
        let m = doubling();
        let g = build_catgroup(&m);
        let mut ch = canonical_choices(&g);
        // Υ^σ_1 = (2,σ) with 2 ∈ Ker d, so θ^{σ,σ}_1 = (2,1)
        ch[4 + 1] = g.index(1, 1, 2);
        let fs = extract_factor_set(&g, &ch).unwrap();
        assert!(check_factor_set(&g, &fs).passed());
        assert_eq!(fs.theta(1, 1, 1), g.index(0, 1, 2));
        assert!(!factor_set_regularity(&g, &fs).passed());
        ch[4] = g.id(0);
        assert_eq!(extract_factor_set(&g, &ch), Err(FunctorError::BadChoice { sigma: 1, x: 0 }));
    }

    #[test]
    fn catgroup_round_trip() {
        for m in [s3_z2(), doubling()] {
            let g = build_catgroup(&m);
            let m2 = catgroup_to_crossed(&g).unwrap();
            assert_eq!(**m2.inner(), **m.inner());
            assert_eq!(build_catgroup(&m2), g);
        }
    }

    #[test]
    fn nonzero_phi_translates() {
        let m = doubling();
        let (p0, p1) = (m.pi0(), m.pi1());
        let phi = SymmetricCochain2::from_tables(p0.module.clone(), p1.module.clone(), &[vec![0, 0], vec![0, 1]], &[vec![0, 0], vec![0, 0]]).unwrap();
        assert!(phi.is_2cocycle());
        let mor = CrossedMorphism { phi, ..CrossedMorphism::identity(&m) };
        assert!(validate_morphism(&mor, &m, &m).passed());
        let g = build_catgroup(&m);
        let f = morphism_to_functor(&mor, &m, &m);
        let r = check_graded_functor(&f, &g, &g);
        assert!(r.passed(), "{r}");
        assert!(is_regular(&f, &g, &g));
        assert_eq!(g.morphism(f.tilde(1, 1)).payload, 2);
        assert_eq!(functor_to_morphism(&f, &m, &m).unwrap(), mor);
    }

    #[test]
    fn b3_violation() {
        let m = doubling();
        let g = build_catgroup(&m);
        let mut f = GradedFunctor::identity(&g);
        f.tilde[4 + 2] = g.index(0, 3, 2);
        assert!(!regularity(&f, &g, &g).get("B3").unwrap().passed());
        assert!(matches!(functor_to_morphism(&f, &m, &m), Err(FunctorError::NotCoherent(_)) | Err(FunctorError::NotRegular(_))));
    }

    #[test]
    fn homotopies() {
        let m = doubling();
        let g = build_catgroup(&m);
        let id = GradedFunctor::identity(&g);
        let ids: Vec<usize> = (0..4).map(|x| g.id(x)).collect();
        assert!(is_homotopy(&ids, &id, &id, &g, &g));
        // θ_1 = (2,1), identities elsewhere
        let th: Vec<usize> = (0..4).map(|x| g.index(0, x, if x == 1 { 2 } else { 0 })).collect();
        let f2 = transport(&th, &id, &g, &g).unwrap();
        assert!(check_graded_functor(&f2, &g, &g).passed());
        assert!(is_homotopy(&th, &id, &f2, &g, &g));
        assert_ne!(f2, id);
        let rep = homotopy_report(&th, &id, &id, &g, &g);
        assert!(!rep.passed());
        assert!(check_axioms(&g).passed());
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Symmetric equivariant cochains of Γ-modules, the degree-2 cocycle
//! identities, `H²` by exhaustive search and by Smith normal form, and
//! degree-3 cochains as consumed by the reduced categorical groups.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::abelian::{abelian_invariants, GammaModule};
use crate::group::{FiniteGroup, GroupHom};
use crate::linalg::{hom_kernel_image, quotient_presentation, IntMatrix};
use crate::report::Report;

/// Default enumeration guard: `2³²` candidates.
pub const DEFAULT_GUARD: u128 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("search space of {candidates} candidates exceeds the guard {guard}")]
    SearchSpaceTooLarge { candidates: u128, guard: u128 },
    #[error("cochain is not normalized at {0:?}")]
    NotNormalized(Vec<usize>),
    #[error("modules are over different Γ")]
    GammaMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// `f : Q×Q ∪ Q×Γ → B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetricCochain2 {
    pub q: Arc<GammaModule>,
    pub b: Arc<GammaModule>,
    pair: Vec<usize>,
    grade: Vec<usize>,
}

/// The first identity family violated by a 2-cochain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleWitness {
    NotNormalized { x: usize, y: usize },
    /// τf(x,σ) + f(σx,τ) ≠ f(x,τσ)
    Grade { x: usize, sigma: usize, tau: usize },
    /// σf(x,y) + f(x+y,σ) ≠ f(x,σ) + f(y,σ) + f(σx,σy)
    Mixed { x: usize, y: usize, sigma: usize },
    /// f(y,z) + f(x,y+z) ≠ f(x,y) + f(x+y,z)
    Assoc { x: usize, y: usize, z: usize },
    /// f(x,y) ≠ f(y,x)
    Symmetry { x: usize, y: usize },
}

impl SymmetricCochain2 {
    pub fn zero(q: Arc<GammaModule>, b: Arc<GammaModule>) -> Result<Self, CohomologyError> {
        if q.gamma() != b.gamma() {
            return Err(CohomologyError::GammaMismatch);
        }
        let (nq, ng) = (q.order(), q.gamma().order());
        Ok(SymmetricCochain2 { pair: vec![0; nq * nq], grade: vec![0; nq * ng], q, b })
    }

    pub fn from_tables(q: Arc<GammaModule>, b: Arc<GammaModule>, pair: &[Vec<usize>], grade: &[Vec<usize>]) -> Result<Self, CohomologyError> {
        let mut f = Self::zero(q, b)?;
        let (nq, ng, nb) = (f.q.order(), f.q.gamma().order(), f.b.order());
        let ok = pair.len() == nq
            && grade.len() == nq
            && pair.iter().all(|r| r.len() == nq && r.iter().all(|&x| x < nb))
            && grade.iter().all(|r| r.len() == ng && r.iter().all(|&x| x < nb));
        if !ok {
            return Err(CohomologyError::ShapeMismatch(format!("expected {nq}×{nq} and {nq}×{ng} tables over {nb} elements")));
        }
        f.pair = pair.concat();
        f.grade = grade.concat();
        Ok(f)
    }

    #[inline]
    pub fn pair(&self, u: usize, v: usize) -> usize {
        self.pair[u * self.q.order() + v]
    }

    #[inline]
    pub fn grade(&self, u: usize, sigma: usize) -> usize {
        self.grade[u * self.q.gamma().order() + sigma]
    }

    pub fn set_pair(&mut self, u: usize, v: usize, b: usize) {
        let n = self.q.order();
        self.pair[u * n + v] = b;
    }

    pub fn set_grade(&mut self, u: usize, sigma: usize, b: usize) {
        let n = self.q.gamma().order();
        self.grade[u * n + sigma] = b;
    }

    pub fn pair_rows(&self) -> Vec<Vec<usize>> {
        self.pair.chunks(self.q.order()).map(<[usize]>::to_vec).collect()
    }

    pub fn grade_rows(&self) -> Vec<Vec<usize>> {
        self.grade.chunks(self.q.gamma().order()).map(<[usize]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.pair.iter().chain(&self.grade).all(|&x| x == 0)
    }

    /// First `(u, v)` or `(u, σ)` slot breaking `f(0,v) = f(u,0) = f(u,1) = 0`;
    /// grade slots are reported as `(u, |Q| + σ)`.
    pub fn normalization_failure(&self) -> Option<(usize, usize)> {
        let nq = self.q.order();
        for u in 0..nq {
            if self.pair(0, u) != 0 {
                return Some((0, u));
            }
            if self.pair(u, 0) != 0 {
                return Some((u, 0));
            }
            if self.grade(u, 0) != 0 {
                return Some((u, nq));
            }
        }
        None
    }

    pub fn add(&self, other: &Self) -> Self {
        let b = &self.b;
        let mut out = self.clone();
        out.pair.iter_mut().zip(&other.pair).for_each(|(x, &y)| *x = b.add(*x, y));
        out.grade.iter_mut().zip(&other.grade).for_each(|(x, &y)| *x = b.add(*x, y));
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.pair.iter_mut().chain(out.grade.iter_mut()).for_each(|x| *x = self.b.neg(*x));
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `g ∘ f` for a Γ-module map `g : B → B′`.
    pub fn pushforward(&self, g: &GroupHom, target: Arc<GammaModule>) -> Self {
        SymmetricCochain2 {
            q: self.q.clone(),
            b: target,
            pair: self.pair.iter().map(|&x| g.apply(x)).collect(),
            grade: self.grade.iter().map(|&x| g.apply(x)).collect(),
        }
    }

    /// `f ∘ (h × h)` and `f ∘ (h × id)` for a Γ-module map `h : Q′ → Q`.
    pub fn pullback(&self, h: &GroupHom, source: Arc<GammaModule>) -> Self {
        let (nq, ng) = (source.order(), source.gamma().order());
        let mut out = SymmetricCochain2 { q: source, b: self.b.clone(), pair: vec![0; nq * nq], grade: vec![0; nq * ng] };
        for u in 0..nq {
            for v in 0..nq {
                out.pair[u * nq + v] = self.pair(h.apply(u), h.apply(v));
            }
            for s in 0..ng {
                out.grade[u * ng + s] = self.grade(h.apply(u), s);
            }
        }
        out
    }

    pub fn is_2cocycle(&self) -> bool {
        self.cocycle_failure().is_none()
    }

    pub fn cocycle_failure(&self) -> Option<CocycleWitness> {
        if let Some((x, y)) = self.normalization_failure() {
            return Some(CocycleWitness::NotNormalized { x, y });
        }
        let (q, b) = (&*self.q, &*self.b);
        let gamma = q.gamma();
        for x in q.elements() {
            for y in q.elements() {
                if self.pair(x, y) != self.pair(y, x) {
                    return Some(CocycleWitness::Symmetry { x, y });
                }
            }
        }
        for x in q.elements() {
            for sigma in gamma.elements() {
                for tau in gamma.elements() {
                    let lhs = b.add(b.act(tau, self.grade(x, sigma)), self.grade(q.act(sigma, x), tau));
                    if lhs != self.grade(x, gamma.mul(tau, sigma)) {
                        return Some(CocycleWitness::Grade { x, sigma, tau });
                    }
                }
            }
        }
        for x in q.elements() {
            for y in q.elements() {
                for sigma in gamma.elements() {
                    let lhs = b.add(b.act(sigma, self.pair(x, y)), self.grade(q.add(x, y), sigma));
                    let rhs = b.add(b.add(self.grade(x, sigma), self.grade(y, sigma)), self.pair(q.act(sigma, x), q.act(sigma, y)));
                    if lhs != rhs {
                        return Some(CocycleWitness::Mixed { x, y, sigma });
                    }
                }
            }
        }
        for x in q.elements() {
            for y in q.elements() {
                for z in q.elements() {
                    let lhs = b.add(self.pair(y, z), self.pair(x, q.add(y, z)));
                    let rhs = b.add(self.pair(x, y), self.pair(q.add(x, y), z));
                    if lhs != rhs {
                        return Some(CocycleWitness::Assoc { x, y, z });
                    }
                }
            }
        }
        None
    }
}

/// A normalized 1-cochain `g : Q → B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain1 {
    pub q: Arc<GammaModule>,
    pub b: Arc<GammaModule>,
    pub values: Vec<usize>,
}

/// `δg(u,v) = g(u) + g(v) − g(u+v)`, `δg(u,σ) = σg(u) − g(σu)`.
pub fn coboundary2(g: &Cochain1) -> Result<SymmetricCochain2, CohomologyError> {
    if g.values.len() != g.q.order() {
        return Err(CohomologyError::ShapeMismatch("1-cochain has the wrong length".into()));
    }
    if g.values[0] != 0 {
        return Err(CohomologyError::NotNormalized(vec![0]));
    }
    let (q, b) = (&*g.q, &*g.b);
    let mut f = SymmetricCochain2::zero(g.q.clone(), g.b.clone())?;
    for u in q.elements() {
        for v in q.elements() {
            f.set_pair(u, v, b.sub(b.add(g.values[u], g.values[v]), g.values[q.add(u, v)]));
        }
        for s in q.gamma().elements() {
            f.set_grade(u, s, b.sub(b.act(s, g.values[u]), g.values[q.act(s, u)]));
        }
    }
    Ok(f)
}

/// Slots of a 2-cochain: pair slots `u·|Q| + v`, then grade slots.
struct Layout {
    nq: usize,
    ng: usize,
    /// slot → free variable (normalized and symmetric slots share or vanish)
    var: Vec<Option<usize>>,
    vars: usize,
    /// one representative slot per variable
    slot_of: Vec<usize>,
}

impl Layout {
    fn new(q: &GammaModule) -> Self {
        let (nq, ng) = (q.order(), q.gamma().order());
        let mut var = vec![None; nq * nq + nq * ng];
        let mut slot_of = Vec::new();
        for u in 1..nq {
            for v in u..nq {
                var[u * nq + v] = Some(slot_of.len());
                var[v * nq + u] = Some(slot_of.len());
                slot_of.push(u * nq + v);
            }
        }
        for u in 1..nq {
            for s in 1..ng {
                var[nq * nq + u * ng + s] = Some(slot_of.len());
                slot_of.push(nq * nq + u * ng + s);
            }
        }
        Layout { nq, ng, vars: slot_of.len(), var, slot_of }
    }

    fn pair(&self, u: usize, v: usize) -> usize {
        u * self.nq + v
    }

    fn grade(&self, u: usize, s: usize) -> usize {
        self.nq * self.nq + u * self.ng + s
    }
}

/// A linear identity `Σ ±σ·f(slot) = 0`, with terms on normalized slots dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Instance {
    terms: Vec<(bool, usize, usize)>,
}

fn instances(q: &GammaModule, lay: &Layout) -> Vec<Instance> {
    let gamma = q.gamma();
    let mut raw: Vec<Vec<(bool, usize, usize)>> = Vec::new();
    for x in q.elements() {
        for s in gamma.elements() {
            for t in gamma.elements() {
                raw.push(vec![
                    (false, t, lay.grade(x, s)),
                    (false, 0, lay.grade(q.act(s, x), t)),
                    (true, 0, lay.grade(x, gamma.mul(t, s))),
                ]);
            }
        }
    }
    for x in q.elements() {
        for y in q.elements() {
            for s in gamma.elements() {
                raw.push(vec![
                    (false, s, lay.pair(x, y)),
                    (false, 0, lay.grade(q.add(x, y), s)),
                    (true, 0, lay.grade(x, s)),
                    (true, 0, lay.grade(y, s)),
                    (true, 0, lay.pair(q.act(s, x), q.act(s, y))),
                ]);
            }
        }
    }
    for x in q.elements() {
        for y in q.elements() {
            for z in q.elements() {
                raw.push(vec![
                    (false, 0, lay.pair(y, z)),
                    (false, 0, lay.pair(x, q.add(y, z))),
                    (true, 0, lay.pair(x, y)),
                    (true, 0, lay.pair(q.add(x, y), z)),
                ]);
            }
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mut terms in raw {
        terms.retain(|t| lay.var[t.2].is_some());
        terms.sort_unstable();
        if !terms.is_empty() && seen.insert(terms.clone()) {
            out.push(Instance { terms });
        }
    }
    out
}

fn eval(inst: &Instance, b: &GammaModule, value: impl Fn(usize) -> usize) -> usize {
    inst.terms.iter().fold(0, |acc, &(neg, s, slot)| {
        let v = b.act(s, value(slot));
        b.add(acc, if neg { b.neg(v) } else { v })
    })
}

fn cochain_from_vars(q: &Arc<GammaModule>, b: &Arc<GammaModule>, lay: &Layout, vals: &[usize]) -> SymmetricCochain2 {
    let mut f = SymmetricCochain2::zero(q.clone(), b.clone()).expect("same Γ");
    let split = lay.nq * lay.nq;
    for (slot, v) in lay.var.iter().enumerate() {
        if let Some(v) = v {
            if slot < split {
                f.pair[slot] = vals[*v];
            } else {
                f.grade[slot - split] = vals[*v];
            }
        }
    }
    f
}

fn vars_of(f: &SymmetricCochain2, lay: &Layout) -> Vec<usize> {
    let split = lay.nq * lay.nq;
    lay.slot_of.iter().map(|&s| if s < split { f.pair[s] } else { f.grade[s - split] }).collect()
}

/// `H²` computed by listing every normalized symmetric 2-cocycle.
#[derive(Debug, Clone)]
pub struct H2Brute {
    pub q: Arc<GammaModule>,
    pub b: Arc<GammaModule>,
    pub cocycles: Vec<SymmetricCochain2>,
    pub coboundaries: Vec<SymmetricCochain2>,
    /// cocycle index → class index; class 0 is the class of zero
    pub class_of: Vec<usize>,
    /// least cocycle of each class, in increasing order
    pub representatives: Vec<SymmetricCochain2>,
    pub quotient: FiniteGroup,
    pub invariants: Vec<u64>,
}

impl H2Brute {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    /// Class of a cocycle, or `None` if `f` is not a cocycle.
    pub fn class(&self, f: &SymmetricCochain2) -> Option<usize> {
        self.cocycles.binary_search_by(|c| cmp_cochain(c, f)).ok().map(|i| self.class_of[i])
    }
}

fn cmp_cochain(a: &SymmetricCochain2, b: &SymmetricCochain2) -> std::cmp::Ordering {
    a.pair.cmp(&b.pair).then_with(|| a.grade.cmp(&b.grade))
}

fn search_size(base: usize, exp: usize) -> u128 {
    (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX)
}

pub fn h2_brute(q: &Arc<GammaModule>, b: &Arc<GammaModule>, guard: u128) -> Result<H2Brute, CohomologyError> {
    if q.gamma() != b.gamma() {
        return Err(CohomologyError::GammaMismatch);
    }
    let lay = Layout::new(q);
    let candidates = search_size(b.order(), lay.vars);
    if candidates > guard {
        return Err(CohomologyError::SearchSpaceTooLarge { candidates, guard });
    }
    let insts = instances(q, &lay);
    let mut by_last: Vec<Vec<&Instance>> = vec![Vec::new(); lay.vars];
    for inst in &insts {
        let last = inst.terms.iter().filter_map(|t| lay.var[t.2]).max().expect("nonempty");
        by_last[last].push(inst);
    }
    let mut vals = vec![0; lay.vars];
    let mut found: Vec<Vec<usize>> = Vec::new();
    fn go(i: usize, vals: &mut Vec<usize>, lay: &Layout, by_last: &[Vec<&Instance>], b: &GammaModule, found: &mut Vec<Vec<usize>>) {
        if i == lay.vars {
            found.push(vals.clone());
            return;
        }
        for x in b.elements() {
            vals[i] = x;
            let ok = by_last[i].iter().all(|inst| eval(inst, b, |slot| vals[lay.var[slot].expect("free")]) == 0);
            if ok {
                go(i + 1, vals, lay, by_last, b, found);
            }
        }
        vals[i] = 0;
    }
    go(0, &mut vals, &lay, &by_last, b, &mut found);
    let mut cocycles: Vec<SymmetricCochain2> = found.iter().map(|v| cochain_from_vars(q, b, &lay, v)).collect();
    cocycles.sort_by(cmp_cochain);

    // coboundaries of all normalized 1-cochains
    let nq = q.order();
    let mut cob = Vec::new();
    let mut g = vec![0; nq];
    loop {
        let f = coboundary2(&Cochain1 { q: q.clone(), b: b.clone(), values: g.clone() })?;
        cob.push(f);
        let mut k = 1;
        while k < nq {
            g[k] += 1;
            if g[k] < b.order() {
                break;
            }
            g[k] = 0;
            k += 1;
        }
        if k >= nq {
            break;
        }
    }
    cob.sort_by(cmp_cochain);
    cob.dedup();

    let index = |f: &SymmetricCochain2| cocycles.binary_search_by(|c| cmp_cochain(c, f)).expect("closed under addition");
    let mut class_of = vec![usize::MAX; cocycles.len()];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..cocycles.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(i);
        for bd in &cob {
            class_of[index(&cocycles[i].add(bd))] = c;
        }
    }
    let n = reps.len();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| class_of[index(&cocycles[reps[i]].add(&cocycles[reps[j]]))]).collect())
        .collect();
    let quotient = FiniteGroup::from_table(&table).expect("cocycle classes form a group");
    let invariants = abelian_invariants(&quotient).expect("abelian");
    let representatives = reps.iter().map(|&i| cocycles[i].clone()).collect();
    Ok(H2Brute { q: q.clone(), b: b.clone(), cocycles, coboundaries: cob, class_of, representatives, quotient, invariants })
}

/// `H²` computed by integer linear algebra: `Z² = ker L`, `B² = im δ`.
#[derive(Debug, Clone)]
pub struct H2Snf {
    pub q: Arc<GammaModule>,
    pub b: Arc<GammaModule>,
    pub invariants: Vec<u64>,
    /// a cocycle of order `invariants[i]` in `H²` for each `i`
    pub generators: Vec<SymmetricCochain2>,
    pub z2_invariants: Vec<u64>,
    pub b2_invariants: Vec<u64>,
}

impl H2Snf {
    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    /// One cocycle per class: `Σ cᵢ·genᵢ` with `0 ≤ cᵢ < dᵢ`, lexicographic in `c`.
    pub fn class_representatives(&self) -> Vec<SymmetricCochain2> {
        let zero = SymmetricCochain2::zero(self.q.clone(), self.b.clone()).expect("same Γ");
        let mut out = vec![zero];
        for (g, &d) in self.generators.iter().zip(&self.invariants).rev() {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            let mut mult = SymmetricCochain2::zero(self.q.clone(), self.b.clone()).expect("same Γ");
            for _ in 0..d {
                next.extend(out.iter().map(|f| mult.add(f)));
                mult = mult.add(g);
            }
            out = next;
        }
        out
    }
}

pub fn h2_snf(q: &Arc<GammaModule>, b: &Arc<GammaModule>) -> Result<H2Snf, CohomologyError> {
    if q.gamma() != b.gamma() {
        return Err(CohomologyError::GammaMismatch);
    }
    let lay = Layout::new(q);
    let binv: Vec<u64> = b.abelian.invariants().to_vec();
    let bgens: Vec<usize> = b.abelian.generators().to_vec();
    let rb = binv.len();
    let domain: Vec<u64> = (0..lay.vars).flat_map(|_| binv.iter().copied()).collect();
    let coords = |x: usize| b.abelian.coords(x).iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    let to_cochain = |v: &[BigInt]| {
        let vals: Vec<usize> = (0..lay.vars)
            .map(|i| {
                let c: Vec<u64> = (0..rb).map(|j| v[i * rb + j].to_u64().expect("reduced")).collect();
                b.abelian.from_coords(&c)
            })
            .collect();
        cochain_from_vars(q, b, &lay, &vals)
    };

    let insts = instances(q, &lay);
    // columns: the image of each domain generator, one B-coordinate block per identity
    let mut rows: BTreeMap<(u64, Vec<BigInt>), ()> = BTreeMap::new();
    let cols: Vec<Vec<BigInt>> = (0..lay.vars * rb)
        .map(|k| {
            let (var, j) = (k / rb, k % rb);
            insts
                .iter()
                .flat_map(|inst| coords(eval(inst, b, |slot| if lay.var[slot] == Some(var) { bgens[j] } else { 0 })))
                .collect()
        })
        .collect();
    let codomain_full: Vec<u64> = insts.iter().flat_map(|_| binv.iter().copied()).collect();
    for (r, &m) in codomain_full.iter().enumerate() {
        let row: Vec<BigInt> = cols.iter().map(|c| c[r].clone()).collect();
        if row.iter().any(|x| *x != BigInt::from(0)) {
            rows.insert((m, row), ());
        }
    }
    let codomain: Vec<u64> = rows.keys().map(|(m, _)| *m).collect();
    let mut lmat = IntMatrix::zeros(codomain.len(), domain.len());
    for (i, ((_, row), _)) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            lmat[(i, j)] = x.clone();
        }
    }
    let z2 = hom_kernel_image(&domain, &codomain, &lmat).map_err(|e| CohomologyError::ShapeMismatch(e.to_string()))?.kernel;

    // coboundary map from normalized 1-cochains
    let nq = q.order();
    let c1: Vec<u64> = (1..nq).flat_map(|_| binv.iter().copied()).collect();
    let dcols: Vec<Vec<BigInt>> = (0..(nq - 1) * rb)
        .map(|k| {
            let (u, j) = (k / rb + 1, k % rb);
            let mut values = vec![0; nq];
            values[u] = bgens[j];
            let f = coboundary2(&Cochain1 { q: q.clone(), b: b.clone(), values }).expect("normalized");
            vars_of(&f, &lay).into_iter().flat_map(coords).collect()
        })
        .collect();
    let dmat = IntMatrix::from_columns(domain.len(), &dcols);
    let b2 = hom_kernel_image(&c1, &domain, &dmat).map_err(|e| CohomologyError::ShapeMismatch(e.to_string()))?.image;

    let h2 = quotient_presentation(&domain, &z2.generators, &b2.generators);
    Ok(H2Snf {
        q: q.clone(),
        b: b.clone(),
        invariants: h2.invariants,
        generators: h2.generators.iter().map(|v| to_cochain(v)).collect(),
        z2_invariants: z2.invariants,
        b2_invariants: b2.invariants,
    })
}

/// Whether `Σ cᵢ·genᵢ ↦ class` is an isomorphism `⊕ ℤ/dᵢ → Z²/B²` of the
/// brute-force quotient.
pub fn representatives_compatible(snf: &H2Snf, brute: &H2Brute) -> bool {
    if snf.order() != brute.class_count() as u64 || snf.invariants != brute.invariants {
        return false;
    }
    let reps = snf.class_representatives();
    let mut seen = vec![false; brute.class_count()];
    for f in &reps {
        match brute.class(f) {
            Some(c) if !seen[c] => seen[c] = true,
            _ => return false,
        }
    }
    // additivity on generators
    snf.generators.iter().zip(&snf.invariants).all(|(g, &d)| {
        let mut m = SymmetricCochain2::zero(snf.q.clone(), snf.b.clone()).expect("same Γ");
        for _ in 0..d {
            m = m.add(g);
        }
        brute.class(&m) == Some(0)
    })
}

/// `H²` with the SNF route as primary, cross-checked by brute force when the
/// search fits under `guard`.
#[derive(Debug, Clone)]
pub struct H2 {
    pub snf: H2Snf,
    pub brute: Option<H2Brute>,
    pub agree: Option<bool>,
}

pub fn h2(q: &Arc<GammaModule>, b: &Arc<GammaModule>, guard: u128) -> Result<H2, CohomologyError> {
    let snf = h2_snf(q, b)?;
    let brute = match h2_brute(q, b, guard) {
        Ok(br) => Some(br),
        Err(CohomologyError::SearchSpaceTooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    let agree = brute.as_ref().map(|br| representatives_compatible(&snf, br));
    Ok(H2 { snf, brute, agree })
}

/// `h : M³ ∪ M² ∪ M²×Γ ∪ M×Γ² → N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain3 {
    pub m: Arc<GammaModule>,
    pub n: Arc<GammaModule>,
    assoc: Vec<usize>,
    braid: Vec<usize>,
    tensor: Vec<usize>,
    comp: Vec<usize>,
}

impl Cochain3 {
    pub fn zero(m: Arc<GammaModule>, n: Arc<GammaModule>) -> Result<Self, CohomologyError> {
        if m.gamma() != n.gamma() {
            return Err(CohomologyError::GammaMismatch);
        }
        let (k, g) = (m.order(), m.gamma().order());
        Ok(Cochain3 { assoc: vec![0; k * k * k], braid: vec![0; k * k], tensor: vec![0; k * k * g], comp: vec![0; k * g * g], m, n })
    }

    /// `h(r,s,t)`
    #[inline]
    pub fn assoc(&self, r: usize, s: usize, t: usize) -> usize {
        let k = self.m.order();
        self.assoc[(r * k + s) * k + t]
    }

    /// `h(r,s)`
    #[inline]
    pub fn braid(&self, r: usize, s: usize) -> usize {
        self.braid[r * self.m.order() + s]
    }

    /// `h(r,r′,σ)`
    #[inline]
    pub fn tensor(&self, r: usize, r2: usize, sigma: usize) -> usize {
        let (k, g) = (self.m.order(), self.m.gamma().order());
        self.tensor[(r * k + r2) * g + sigma]
    }

    /// `h(r,τ,σ)`
    #[inline]
    pub fn comp(&self, r: usize, tau: usize, sigma: usize) -> usize {
        let g = self.m.gamma().order();
        self.comp[(r * g + tau) * g + sigma]
    }

    pub fn set_assoc(&mut self, r: usize, s: usize, t: usize, v: usize) {
        let k = self.m.order();
        self.assoc[(r * k + s) * k + t] = v;
    }

    pub fn set_braid(&mut self, r: usize, s: usize, v: usize) {
        let k = self.m.order();
        self.braid[r * k + s] = v;
    }

    pub fn set_tensor(&mut self, r: usize, r2: usize, sigma: usize, v: usize) {
        let (k, g) = (self.m.order(), self.m.gamma().order());
        self.tensor[(r * k + r2) * g + sigma] = v;
    }

    pub fn set_comp(&mut self, r: usize, tau: usize, sigma: usize, v: usize) {
        let g = self.m.gamma().order();
        self.comp[(r * g + tau) * g + sigma] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.assoc.iter().chain(&self.braid).chain(&self.tensor).chain(&self.comp).all(|&x| x == 0)
    }

    /// Raw tables in the order assoc, braid, tensor, comp (flattened row-major).
    pub fn tables(&self) -> [&[usize]; 4] {
        [&self.assoc, &self.braid, &self.tensor, &self.comp]
    }

    pub fn from_flat(m: Arc<GammaModule>, n: Arc<GammaModule>, tables: [Vec<usize>; 4]) -> Result<Self, CohomologyError> {
        let mut h = Self::zero(m, n)?;
        let [a, b, t, c] = tables;
        if a.len() != h.assoc.len() || b.len() != h.braid.len() || t.len() != h.tensor.len() || c.len() != h.comp.len() {
            return Err(CohomologyError::ShapeMismatch("3-cochain tables have the wrong sizes".into()));
        }
        if a.iter().chain(&b).chain(&t).chain(&c).any(|&x| x >= h.n.order()) {
            return Err(CohomologyError::ShapeMismatch("3-cochain value out of range".into()));
        }
        (h.assoc, h.braid, h.tensor, h.comp) = (a, b, t, c);
        Ok(h)
    }

    /// First argument tuple with a unit of `M` or `1_Γ` whose value is nonzero.
    pub fn normalization_failure(&self) -> Option<Vec<usize>> {
        let (k, g) = (self.m.order(), self.m.gamma().order());
        for r in 0..k {
            for s in 0..k {
                for t in 0..k {
                    if (r == 0 || s == 0 || t == 0) && self.assoc(r, s, t) != 0 {
                        return Some(vec![r, s, t]);
                    }
                }
                if (r == 0 || s == 0) && self.braid(r, s) != 0 {
                    return Some(vec![r, s]);
                }
                for x in 0..g {
                    if (r == 0 || s == 0 || x == 0) && self.tensor(r, s, x) != 0 {
                        return Some(vec![r, s, x]);
                    }
                }
            }
            for t in 0..g {
                for x in 0..g {
                    if (r == 0 || t == 0 || x == 0) && self.comp(r, t, x) != 0 {
                        return Some(vec![r, t, x]);
                    }
                }
            }
        }
        None
    }

    pub fn is_normalized(&self) -> bool {
        self.normalization_failure().is_none()
    }

    fn map_values(&self, f: impl Fn(usize) -> usize, n: Arc<GammaModule>) -> Self {
        let m = |v: &Vec<usize>| v.iter().map(|&x| f(x)).collect();
        Cochain3 { m: self.m.clone(), n, assoc: m(&self.assoc), braid: m(&self.braid), tensor: m(&self.tensor), comp: m(&self.comp) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = &self.n;
        let z = |a: &Vec<usize>, b: &Vec<usize>| a.iter().zip(b).map(|(&x, &y)| n.sub(x, y)).collect();
        Cochain3 {
            m: self.m.clone(),
            n: n.clone(),
            assoc: z(&self.assoc, &other.assoc),
            braid: z(&self.braid, &other.braid),
            tensor: z(&self.tensor, &other.tensor),
            comp: z(&self.comp, &other.comp),
        }
    }
}

/// `φ*h′ : (r, …) ↦ h′(φr, …)` for `φ : M → M′`.
pub fn pullback3(phi: &GroupHom, source: Arc<GammaModule>, h: &Cochain3) -> Result<Cochain3, CohomologyError> {
    if *phi.domain != **source.group() || *phi.codomain != **h.m.group() {
        return Err(CohomologyError::ShapeMismatch("pullback map does not match the cochain".into()));
    }
    let mut out = Cochain3::zero(source, h.n.clone())?;
    let (k, g) = (out.m.order(), out.m.gamma().order());
    let p = |x| phi.apply(x);
    for r in 0..k {
        for s in 0..k {
            for t in 0..k {
                out.set_assoc(r, s, t, h.assoc(p(r), p(s), p(t)));
            }
            out.set_braid(r, s, h.braid(p(r), p(s)));
            for x in 0..g {
                out.set_tensor(r, s, x, h.tensor(p(r), p(s), x));
            }
        }
        for t in 0..g {
            for x in 0..g {
                out.set_comp(r, t, x, h.comp(p(r), t, x));
            }
        }
    }
    Ok(out)
}

/// `f_*h = f ∘ h` for `f : N → N′`.
pub fn pushforward3(f: &GroupHom, target: Arc<GammaModule>, h: &Cochain3) -> Result<Cochain3, CohomologyError> {
    if *f.domain != **h.n.group() || *f.codomain != **target.group() {
        return Err(CohomologyError::ShapeMismatch("pushforward map does not match the cochain".into()));
    }
    Ok(h.map_values(|x| f.apply(x), target))
}

/// `k = φ*h′ − f_*h` over `(M, N′)`.
pub fn obstruction(phi: &GroupHom, f: &GroupHom, h: &Cochain3, h2: &Cochain3) -> Result<Cochain3, CohomologyError> {
    let a = pullback3(phi, h.m.clone(), h2)?;
    let b = pushforward3(f, h2.n.clone(), h)?;
    Ok(a.sub(&b))
}

/// `h ∈ Z³_{Γ,s}` exactly when `∫_Γ(M, N, h)` satisfies every coherence axiom.
pub fn is_3cocycle(h: &Cochain3) -> Report {
    match crate::catgroup::build_reduced(h) {
        Ok(g) => crate::catgroup::check_axioms(&g),
        Err(_) => {
            let mut r = Report::new();
            r.record("normalized", h.normalization_failure());
            r
        }
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..order` and the identity is always index `0`.
//! Tables supplied with the identity elsewhere are relabelled at
//! construction by swapping it into position `0`.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("table is not square: row {row} has length {len}, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("table not closed: {a}·{b} = {value} is out of range")]
    NotClosed { a: usize, b: usize, value: usize },
    #[error("table not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("table has no identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("element {0} is out of range")]
    OutOfRange(usize),
    #[error("subset is not a subgroup (witness {0:?})")]
    NotSubgroup(Vec<usize>),
    #[error("subgroup is not normal: conjugating {n} by {g} leaves the subgroup")]
    NotNormal { g: usize, n: usize },
    #[error("group of order {0} exceeds the supported bound")]
    TooLarge(usize),
    #[error("map is not a homomorphism at ({a}, {b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("group is not abelian: {a}·{b} ≠ {b}·{a}")]
    NotAbelian { a: usize, b: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Largest order accepted by the table constructors.
pub const MAX_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a square Cayley table. Errors name the first witness in
    /// lexicographic order.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare { row, len: r.len(), order: n });
            }
        }
        for (a, r) in rows.iter().enumerate() {
            for (b, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::NotClosed { a, b, value });
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverses = vec![usize::MAX; n];
        for x in 0..n {
            match (0..n).find(|&y| rows[x][y] == e && rows[y][x] == e) {
                Some(y) => inverses[x] = y,
                None => return Err(GroupError::NoInverse(x)),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = rows[a][b];
                for c in 0..n {
                    if rows[ab][c] != rows[a][rows[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        // relabel so that the identity sits at index 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel(a) * n + relabel(b)] = relabel(rows[a][b]);
            }
        }
        let mut inv = vec![0; n];
        for x in 0..n {
            inv[relabel(x)] = relabel(inverses[x]);
        }
        Ok(FiniteGroup { order: n, table, inverses: inv })
    }

    fn from_flat_unchecked(order: usize, table: Vec<usize>) -> Self {
        let mut inverses = vec![0; order];
        for x in 0..order {
            inverses[x] = (0..order).find(|&y| table[x * order + y] == 0).unwrap();
        }
        FiniteGroup { order, table, inverses }
    }

    pub fn trivial() -> Self {
        FiniteGroup { order: 1, table: vec![0], inverses: vec![0] }
    }

    /// ℤ/n with element `k` standing for the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let inverses = (0..n).map(|k| (n - k) % n).collect();
        FiniteGroup { order: n, table, inverses }
    }

    /// Direct product; the pair `(a, b)` has index `a * |H| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, n) = (g.order, h.order);
        let o = m * n;
        let mut table = vec![0; o * o];
        for x in 0..o {
            for y in 0..o {
                table[x * o + y] = g.mul(x / n, y / n) * n + h.mul(x % n, y % n);
            }
        }
        let inverses = (0..o).map(|x| g.inv(x / n) * n + h.inv(x % n)).collect();
        FiniteGroup { order: o, table, inverses }
    }

    /// Closes `generators` under `mul`. Elements are numbered in breadth-first
    /// order from the identity, so the identity is index 0. Also returns the
    /// element list in index order.
    pub fn from_closure<T, F>(identity: T, generators: &[T], mul: F) -> (Self, Vec<T>)
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let p = mul(&elems[i], g);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&mul(&elems[a], &elems[b])];
            }
        }
        (Self::from_flat_unchecked(n, table), elems)
    }

    /// Symmetric group on three letters.
    pub fn symmetric3() -> Self {
        Self::permutation_group(&[vec![1, 0, 2], vec![1, 2, 0]])
    }

    /// Dihedral group of order 8 acting on the square's vertices.
    pub fn dihedral8() -> Self {
        Self::permutation_group(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
    }

    /// Quaternion group. With this numbering 0 = 1, 1 = i, 2 = j, and the
    /// remaining indices follow breadth-first closure.
    pub fn quaternion() -> Self {
        Self::from_closure(Quat::ONE, &[Quat::I, Quat::J], Quat::mul).0
    }

    /// Group generated by the given permutations (composition `(p·q)(i) = p(q(i))`).
    pub fn permutation_group(generators: &[Vec<usize>]) -> Self {
        let n = generators.first().map_or(0, Vec::len);
        let id: Vec<usize> = (0..n).collect();
        Self::from_closure(id, generators, |p, q| q.iter().map(|&i| p[i]).collect()).0
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `a · b⁻¹`.
    #[inline]
    pub fn div(&self, a: usize, b: usize) -> usize {
        self.mul(a, self.inv(b))
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.first_noncommuting().is_none()
    }

    pub fn first_noncommuting(&self) -> Option<(usize, usize)> {
        for a in 0..self.order {
            for b in a + 1..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Smallest subgroup containing `set`, as a sorted element list.
    pub fn subgroup_generated(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in set {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let comms: Vec<usize> = (0..self.order)
            .flat_map(|x| (0..self.order).map(move |y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        self.subgroup_generated(&comms)
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    /// Checks that `set` is a subgroup and returns its membership mask.
    pub fn subgroup_mask(&self, set: &[usize]) -> Result<Vec<bool>, GroupError> {
        let mut mask = vec![false; self.order];
        for &x in set {
            if x >= self.order {
                return Err(GroupError::OutOfRange(x));
            }
            mask[x] = true;
        }
        if !mask[0] {
            return Err(GroupError::NotSubgroup(vec![0]));
        }
        for &a in set {
            for &b in set {
                if !mask[self.div(a, b)] {
                    return Err(GroupError::NotSubgroup(vec![a, b]));
                }
            }
        }
        Ok(mask)
    }

    pub fn check_normal(&self, set: &[usize]) -> Result<(), GroupError> {
        let mask = self.subgroup_mask(set)?;
        for g in 0..self.order {
            for n in 0..self.order {
                if mask[n] && !mask[self.conj(g, n)] {
                    return Err(GroupError::NotNormal { g, n });
                }
            }
        }
        Ok(())
    }

    /// Quotient by a normal subgroup. Cosets are numbered by the order of
    /// their least members, so the projection is monotone on representatives.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, GroupHom), GroupError> {
        self.check_normal(normal)?;
        let mut coset = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset[x] == usize::MAX {
                let c = reps.len();
                reps.push(x);
                for &n in normal {
                    coset[self.mul(x, n)] = c;
                }
            }
        }
        let k = reps.len();
        let mut table = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                table[a * k + b] = coset[self.mul(reps[a], reps[b])];
            }
        }
        let q = Arc::new(FiniteGroup::from_flat_unchecked(k, table));
        let proj = GroupHom::new_unchecked(Arc::new(self.clone()), q.clone(), coset);
        Ok(((*q).clone(), proj))
    }

    /// A subgroup as a group in its own right, with element `i` standing for
    /// the `i`-th smallest member. Returns the inclusion.
    pub fn subgroup_as_group(&self, set: &[usize]) -> Result<(FiniteGroup, GroupHom), GroupError> {
        self.subgroup_mask(set)?;
        let mut members = set.to_vec();
        members.sort_unstable();
        members.dedup();
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let k = members.len();
        let mut table = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                table[a * k + b] = pos[&self.mul(members[a], members[b])];
            }
        }
        let s = Arc::new(FiniteGroup::from_flat_unchecked(k, table));
        let incl = GroupHom::new_unchecked(s.clone(), Arc::new(self.clone()), members);
        Ok(((*s).clone(), incl))
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        for x in 1..self.order {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Quat {
    sign: bool,
    unit: u8,
}

impl Quat {
    const ONE: Quat = Quat { sign: false, unit: 0 };
    const I: Quat = Quat { sign: false, unit: 1 };
    const J: Quat = Quat { sign: false, unit: 2 };

    fn mul(a: &Quat, b: &Quat) -> Quat {
        // unit products: 1, i, j, k
        const UNIT: [[(bool, u8); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let (s, u) = UNIT[a.unit as usize][b.unit as usize];
        Quat { sign: a.sign ^ b.sign ^ s, unit: u }
    }
}

/// A map between finite groups given by its value table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupHom {
    pub domain: Arc<FiniteGroup>,
    pub codomain: Arc<FiniteGroup>,
    pub map: Vec<usize>,
}

impl GroupHom {
    pub fn new(domain: Arc<FiniteGroup>, codomain: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != domain.order() {
            return Err(GroupError::Shape(format!(
                "homomorphism table has {} entries, domain has order {}",
                map.len(),
                domain.order()
            )));
        }
        if let Some(&x) = map.iter().find(|&&x| x >= codomain.order()) {
            return Err(GroupError::OutOfRange(x));
        }
        let h = GroupHom { domain, codomain, map };
        if let Some((a, b)) = h.first_failure() {
            return Err(GroupError::NotHomomorphism { a, b });
        }
        Ok(h)
    }

    pub fn new_unchecked(domain: Arc<FiniteGroup>, codomain: Arc<FiniteGroup>, map: Vec<usize>) -> Self {
        GroupHom { domain, codomain, map }
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let map = g.elements().collect();
        GroupHom { domain: g.clone(), codomain: g, map }
    }

    pub fn zero(domain: Arc<FiniteGroup>, codomain: Arc<FiniteGroup>) -> Self {
        let map = vec![0; domain.order()];
        GroupHom { domain, codomain, map }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        GroupHom {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        }
    }

    pub fn first_failure(&self) -> Option<(usize, usize)> {
        let (g, h) = (&self.domain, &self.codomain);
        if self.map.len() != g.order() || self.map.iter().any(|&x| x >= h.order()) {
            return Some((0, 0));
        }
        for a in g.elements() {
            for b in g.elements() {
                if self.map[g.mul(a, b)] != h.mul(self.map[a], self.map[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_hom(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.domain.elements().filter(|&x| self.map[x] == 0).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut im = self.map.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.domain.order()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.codomain.order()
    }
}

/// An action of Γ on a group by automorphisms, stored as a `|Γ| × |target|` table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaAction {
    pub gamma: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    act: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("action table has the wrong shape")]
    Shape,
    #[error("σ = {sigma} does not act bijectively")]
    NotBijective { sigma: usize },
    #[error("σ = {sigma} is not a homomorphism at ({a}, {b})")]
    NotAutomorphism { sigma: usize, a: usize, b: usize },
    #[error("identity of Γ moves {x}")]
    IdentityMoves { x: usize },
    #[error("(στ)x ≠ σ(τx) at σ = {sigma}, τ = {tau}, x = {x}")]
    NotCompatible { sigma: usize, tau: usize, x: usize },
}

impl GammaAction {
    pub fn new(gamma: Arc<FiniteGroup>, target: Arc<FiniteGroup>, rows: &[Vec<usize>]) -> Result<Self, ActionError> {
        let a = Self::new_unchecked(gamma, target, rows)?;
        a.check()?;
        Ok(a)
    }

    /// Shape-checked but not axiom-checked.
    pub fn new_unchecked(gamma: Arc<FiniteGroup>, target: Arc<FiniteGroup>, rows: &[Vec<usize>]) -> Result<Self, ActionError> {
        if rows.len() != gamma.order() || rows.iter().any(|r| r.len() != target.order() || r.iter().any(|&x| x >= target.order())) {
            return Err(ActionError::Shape);
        }
        Ok(GammaAction { gamma, target, act: rows.concat() })
    }

    pub fn trivial(gamma: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let act = (0..gamma.order()).flat_map(|_| target.elements()).collect();
        GammaAction { gamma, target, act }
    }

    /// ℤ/2 acting through an involutive automorphism of `target`.
    pub fn involution(target: Arc<FiniteGroup>, auto: &[usize]) -> Result<Self, ActionError> {
        let gamma = Arc::new(FiniteGroup::cyclic(2));
        let rows = vec![target.elements().collect(), auto.to_vec()];
        Self::new(gamma, target, &rows)
    }

    #[inline]
    pub fn apply(&self, sigma: usize, x: usize) -> usize {
        self.act[sigma * self.target.order() + x]
    }

    /// A copy with one table entry replaced; the result is not re-validated.
    pub fn with_entry(&self, sigma: usize, x: usize, value: usize) -> Self {
        let mut out = self.clone();
        out.act[sigma * self.target.order() + x] = value;
        out
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.act.chunks(self.target.order()).map(<[usize]>::to_vec).collect()
    }

    pub fn is_trivial(&self) -> bool {
        let n = self.target.order();
        self.act.iter().enumerate().all(|(i, &x)| x == i % n)
    }

    pub fn check(&self) -> Result<(), ActionError> {
        let (g, t) = (&self.gamma, &self.target);
        for sigma in g.elements() {
            let mut seen = vec![false; t.order()];
            for x in t.elements() {
                seen[self.apply(sigma, x)] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(ActionError::NotBijective { sigma });
            }
            for a in t.elements() {
                for b in t.elements() {
                    if self.apply(sigma, t.mul(a, b)) != t.mul(self.apply(sigma, a), self.apply(sigma, b)) {
                        return Err(ActionError::NotAutomorphism { sigma, a, b });
                    }
                }
            }
        }
        for x in t.elements() {
            if self.apply(0, x) != x {
                return Err(ActionError::IdentityMoves { x });
            }
        }
        for sigma in g.elements() {
            for tau in g.elements() {
                for x in t.elements() {
                    if self.apply(g.mul(sigma, tau), x) != self.apply(sigma, self.apply(tau, x)) {
                        return Err(ActionError::NotCompatible { sigma, tau, x });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// Whether `subset` is mapped into itself by every σ.
    pub fn preserves(&self, subset: &[usize]) -> bool {
        let mut mask = vec![false; self.target.order()];
        subset.iter().for_each(|&x| mask[x] = true);
        self.gamma.elements().all(|s| subset.iter().all(|&x| mask[self.apply(s, x)]))
    }

    /// The induced action on a quotient, given the projection.
    pub fn on_quotient(&self, proj: &GroupHom) -> GammaAction {
        let q = proj.codomain.clone();
        let mut rep = vec![usize::MAX; q.order()];
        for x in proj.domain.elements().rev() {
            rep[proj.apply(x)] = x;
        }
        let rows: Vec<Vec<usize>> = self
            .gamma
            .elements()
            .map(|s| q.elements().map(|c| proj.apply(self.apply(s, rep[c]))).collect())
            .collect();
        GammaAction { gamma: self.gamma.clone(), target: q, act: rows.concat() }
    }

    /// The restricted action on a stable subgroup, given its inclusion.
    pub fn on_subgroup(&self, incl: &GroupHom) -> GammaAction {
        let pos: HashMap<usize, usize> = incl.map.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let rows: Vec<Vec<usize>> = self
            .gamma
            .elements()
            .map(|s| incl.map.iter().map(|&x| pos[&self.apply(s, x)]).collect())
            .collect();
        GammaAction { gamma: self.gamma.clone(), target: incl.domain.clone(), act: rows.concat() }
    }

    /// Whether `h` commutes with the two actions (which must share Γ).
    pub fn equivariant(&self, h: &GroupHom, other: &GammaAction) -> bool {
        self.gamma.elements().all(|s| h.domain.elements().all(|x| h.apply(self.apply(s, x)) == other.apply(s, h.apply(x))))
    }
}

/// All homomorphisms `g → h`, in lexicographic order of generator images.
pub fn homomorphisms(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>) -> Vec<GroupHom> {
    let gens = g.generators();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    extend_homs(g, h, &gens, &mut images, &mut |map| {
        out.push(GroupHom::new_unchecked(g.clone(), h.clone(), map.to_vec()));
        true
    });
    out
}

/// Some isomorphism `g → h` if one exists.
pub fn isomorphism(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>) -> Option<GroupHom> {
    if g.order() != h.order() || g.is_abelian() != h.is_abelian() {
        return None;
    }
    let mut gorders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    let mut horders: Vec<usize> = h.elements().map(|x| h.element_order(x)).collect();
    gorders.sort_unstable();
    horders.sort_unstable();
    if gorders != horders {
        return None;
    }
    let gens = g.generators();
    let mut found = None;
    let mut images = Vec::with_capacity(gens.len());
    extend_homs(g, h, &gens, &mut images, &mut |map| {
        let mut seen = vec![false; h.order()];
        map.iter().for_each(|&y| seen[y] = true);
        if seen.iter().all(|&s| s) {
            found = Some(GroupHom::new_unchecked(g.clone(), h.clone(), map.to_vec()));
            false
        } else {
            true
        }
    });
    found
}

pub fn automorphisms(g: &Arc<FiniteGroup>) -> Vec<GroupHom> {
    homomorphisms(g, g).into_iter().filter(GroupHom::is_injective).collect()
}

/// Backtracking over generator images. After each new image the partial map
/// on the generated subgroup is extended along the Cayley graph and any
/// inconsistency prunes the branch. `visit` returns false to stop.
fn extend_homs(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let k = images.len();
    let map = match cayley_extend(g, h, &gens[..k], images) {
        Some(m) => m,
        None => return true,
    };
    if k == gens.len() {
        return visit(&map);
    }
    let ord = g.element_order(gens[k]);
    for y in h.elements() {
        if !ord.is_multiple_of(h.element_order(y)) {
            continue;
        }
        images.push(y);
        let go_on = extend_homs(g, h, gens, images, visit);
        images.pop();
        if !go_on {
            return false;
        }
    }
    true
}

fn cayley_extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let v = h.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = v;
                queue.push_back(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_table() {
        let g = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g, FiniteGroup::cyclic(2));
    }

    #[test]
    fn missing_inverse() {
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NoInverse(1));
    }

    #[test]
    fn errors_name_witnesses() {
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]]),
            Err(GroupError::NotClosed { a: 0, b: 1, value: 2 })
        ));
        assert!(matches!(FiniteGroup::from_table(&[vec![1, 0], vec![1, 0]]), Err(GroupError::NoIdentity)));
        assert!(matches!(FiniteGroup::from_table(&[vec![0, 1]]), Err(GroupError::NotSquare { .. })));
        // a Latin square with identity that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&t), Err(GroupError::NotAssociative { .. })));
    }

    #[test]
    fn identity_is_relabelled_to_zero() {
        let g = FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(0, 0), 0);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn s3_by_closure() {
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        // the closure table is a valid Cayley table
        assert_eq!(FiniteGroup::from_table(&s3.rows()).unwrap(), s3);
    }

    #[test]
    fn subgroups() {
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.subgroup_generated(&[]), vec![0]);
        assert_eq!(FiniteGroup::cyclic(6).subgroup_generated(&[2]), vec![0, 2, 4]);
        let t = (1..6).find(|&x| s3.element_order(x) == 2).unwrap();
        assert_eq!(s3.subgroup_generated(&[t]).len(), 2);
        assert_eq!(s3.commutator_subgroup().len(), 3);
        assert_eq!(s3.center(), vec![0]);
        let q8 = FiniteGroup::quaternion();
        let minus_one = q8.mul(1, 1);
        assert_eq!(q8.commutator_subgroup(), {
            let mut v = vec![0, minus_one];
            v.sort();
            v
        });
        assert_eq!(q8.center().len(), 2);
        assert_eq!(FiniteGroup::cyclic(5).commutator_subgroup(), vec![0]);
        assert_eq!(FiniteGroup::cyclic(5).center().len(), 5);
    }

    #[test]
    fn quotients() {
        let z4 = FiniteGroup::cyclic(4);
        let (q, p) = z4.quotient(&[0, 2]).unwrap();
        assert_eq!(q, FiniteGroup::cyclic(2));
        assert_eq!(p.map, vec![0, 1, 0, 1]);
        let all: Vec<usize> = z4.elements().collect();
        assert_eq!(z4.quotient(&all).unwrap().0.order(), 1);
        let s3 = FiniteGroup::symmetric3();
        let t = (1..6).find(|&x| s3.element_order(x) == 2).unwrap();
        assert!(matches!(s3.quotient(&[0, t]), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn actions() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        assert!(GammaAction::trivial(z2.clone(), z4.clone()).is_valid());
        assert!(GammaAction::involution(z4.clone(), &[0, 3, 2, 1]).is_ok());
        let bad = GammaAction::new_unchecked(z2, z4, &[vec![0, 1, 2, 3], vec![0, 0, 2, 2]]).unwrap();
        assert!(matches!(bad.check(), Err(ActionError::NotBijective { sigma: 1 })));
    }

    #[test]
    fn hom_enumeration_counts() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let z6 = Arc::new(FiniteGroup::cyclic(6));
        // |Hom(Z/m, Z/n)| = gcd(m, n)
        assert_eq!(homomorphisms(&z4, &z6).len(), 2);
        assert_eq!(homomorphisms(&z6, &z6).len(), 6);
        let s3 = Arc::new(FiniteGroup::symmetric3());
        assert_eq!(automorphisms(&s3).len(), 6);
        let q8 = Arc::new(FiniteGroup::quaternion());
        assert_eq!(automorphisms(&q8).len(), 24);
        let d4 = Arc::new(FiniteGroup::dihedral8());
        assert!(isomorphism(&q8, &d4).is_none());
        assert_eq!(automorphisms(&d4).len(), 8);
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Integer matrices, Smith normal form, and subgroup/quotient presentations
//! inside finite abelian groups `ℤ/e₁ ⊕ … ⊕ ℤ/e_m`.
//!
//! All arithmetic is over `BigInt`; pivoting never overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix shape mismatch: {0}")]
    MatrixShapeMismatch(String),
    #[error("generator {generator} is sent to an element whose order does not divide {order}")]
    NotWellDefined { generator: usize, order: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(BigInt::zero(), |acc, j| acc + &self[(i, j)] * &v[j]))
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// rows (a, b) ← (p·a + q·b, r·a + s·b)
    fn mix_rows(&mut self, a: usize, b: usize, [p, q, r, s]: &[BigInt; 4]) {
        for j in 0..self.cols {
            let x = self[(a, j)].clone();
            let y = self[(b, j)].clone();
            self[(a, j)] = p * &x + q * &y;
            self[(b, j)] = r * &x + s * &y;
        }
    }

    /// cols (a, b) ← (p·a + q·b, r·a + s·b)
    fn mix_cols(&mut self, a: usize, b: usize, [p, q, r, s]: &[BigInt; 4]) {
        for i in 0..self.rows {
            let x = self[(i, a)].clone();
            let y = self[(i, b)].clone();
            self[(i, a)] = p * &x + q * &y;
            self[(i, b)] = r * &x + s * &y;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// `u · m · w = s` with `s` diagonal, `s₀ | s₁ | …`, nonnegative, zeros last.
#[derive(Debug, Clone)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub w: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Coefficients `[x, y, -q/g, p/g]` of a determinant-one matrix sending
/// `(p, q)` to `(g, 0)` with `g = gcd(p, q) > 0`.
fn bezout(p: &BigInt, q: &BigInt) -> [BigInt; 4] {
    if !p.is_zero() && (q % p).is_zero() {
        // keep the pivot row untouched so cleared entries stay cleared
        return [BigInt::one(), BigInt::zero(), -(q / p), BigInt::one()];
    }
    let e = p.extended_gcd(q);
    let (g, x, y) = (e.gcd, e.x, e.y);
    [x, y, -(q / &g), p / &g]
}

pub fn smith(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut w = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot of least absolute value
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !s[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        s.swap_cols(t, pj);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let c = bezout(&s[(t, t)], &s[(i, t)]);
                s.mix_rows(t, i, &c);
                u.mix_rows(t, i, &c);
                // inverse of [[p, q], [r, s]] with det 1 is [[s, -q], [-r, p]]
                let [p, q, r, ss] = c;
                u_inv.mix_cols(t, i, &[ss.clone(), -r.clone(), -q.clone(), p.clone()]);
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let c = bezout(&s[(t, t)], &s[(t, j)]);
                s.mix_cols(t, j, &c);
                w.mix_cols(t, j, &c);
                dirty = true;
            }
            if dirty && (t + 1..rows).any(|i| !s[(i, t)].is_zero()) {
                continue;
            }
            // divisibility of the remaining block
            let piv = s[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&s[(i, j)] % &piv).is_zero()));
            match bad {
                Some(i) => {
                    let one = [BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::one()];
                    s.mix_rows(t, i, &one);
                    u.mix_rows(t, i, &one);
                    u_inv.mix_cols(t, i, &[BigInt::one(), BigInt::zero(), -BigInt::one(), BigInt::one()]);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            for j in 0..cols {
                s[(t, j)] = -&s[(t, j)];
            }
            for j in 0..rows {
                u[(t, j)] = -&u[(t, j)];
                u_inv[(j, t)] = -&u_inv[(j, t)];
            }
        }
        t += 1;
    }
    Smith { s, u, u_inv, w, rank: t }
}

/// A basis of the lattice `{x ∈ ℤⁿ : m·x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let sm = smith(m);
    (sm.rank..m.cols).map(|k| sm.w.column(k)).collect()
}

/// Some integer solution of `m·x = b`, if one exists.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let sm = smith(m);
    let ub = sm.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); m.cols];
    for (k, v) in ub.iter().enumerate() {
        if k < sm.rank {
            let d = &sm.s[(k, k)];
            if !(v % d).is_zero() {
                return None;
            }
            y[k] = v / d;
        } else if !v.is_zero() {
            return None;
        }
    }
    Some(sm.w.mul_vec(&y))
}

fn reduce(v: &[BigInt], moduli: &[BigInt]) -> Vec<BigInt> {
    v.iter().zip(moduli).map(|(x, e)| x.mod_floor(e)).collect()
}

/// A finite abelian group presented as `⊕ ℤ/dᵢ` inside an ambient group,
/// with one ambient vector per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub invariants: Vec<u64>,
    pub generators: Vec<Vec<BigInt>>,
}

impl Presentation {
    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }
}

/// The quotient `H / K` where `H` is generated by `h_gens` inside
/// `ℤ/e₁ ⊕ … ⊕ ℤ/e_m` and `K ⊆ H` is generated by `k_gens`.
/// Generators of the result are ambient lifts of the cyclic factors.
pub fn quotient_presentation(moduli: &[u64], h_gens: &[Vec<BigInt>], k_gens: &[Vec<BigInt>]) -> Presentation {
    let m = moduli.len();
    let e: Vec<BigInt> = moduli.iter().map(|&x| BigInt::from(x)).collect();
    let r = h_gens.len();
    if r == 0 {
        return Presentation { invariants: vec![], generators: vec![] };
    }
    // [V | diag(e)]
    let mut cols: Vec<Vec<BigInt>> = h_gens.to_vec();
    for j in 0..m {
        let mut c = vec![BigInt::zero(); m];
        c[j] = e[j].clone();
        cols.push(c);
    }
    let big = IntMatrix::from_columns(m, &cols);
    let mut relations: Vec<Vec<BigInt>> = integer_kernel(&big).into_iter().map(|v| v[..r].to_vec()).collect();
    for w in k_gens {
        let sol = solve(&big, w).expect("quotient generator not contained in the subgroup");
        relations.push(sol[..r].to_vec());
    }
    relations.retain(|v| v.iter().any(|x| !x.is_zero()));
    let rel = if relations.is_empty() { IntMatrix::zeros(r, 1) } else { IntMatrix::from_columns(r, &relations) };
    let sm = smith(&rel);
    let vmat = IntMatrix::from_columns(m, h_gens);
    let mut invariants = Vec::new();
    let mut generators = Vec::new();
    for i in 0..r {
        let d = if i < sm.rank { sm.s[(i, i)].clone() } else { BigInt::zero() };
        assert!(!d.is_zero(), "infinite factor in a finite ambient group");
        if d.is_one() {
            continue;
        }
        invariants.push(d.to_u64().expect("invariant factor fits in u64"));
        generators.push(reduce(&vmat.mul_vec(&sm.u_inv.column(i)), &e));
    }
    Presentation { invariants, generators }
}

pub fn subgroup_presentation(moduli: &[u64], gens: &[Vec<BigInt>]) -> Presentation {
    quotient_presentation(moduli, gens, &[])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelImage {
    pub kernel: Presentation,
    pub image: Presentation,
}

/// Kernel and image of the homomorphism `⊕ ℤ/aⱼ → ⊕ ℤ/cᵢ` whose `j`-th
/// generator is sent to column `j` of `matrix`.
pub fn hom_kernel_image(domain: &[u64], codomain: &[u64], matrix: &IntMatrix) -> Result<KernelImage, LinalgError> {
    if matrix.rows() != codomain.len() || matrix.cols() != domain.len() {
        return Err(LinalgError::MatrixShapeMismatch(format!(
            "{}×{} matrix for a map ℤ^{} → ℤ^{}",
            matrix.rows(),
            matrix.cols(),
            domain.len(),
            codomain.len()
        )));
    }
    let c: Vec<BigInt> = codomain.iter().map(|&x| BigInt::from(x)).collect();
    for (j, &a) in domain.iter().enumerate() {
        let col = matrix.column(j);
        if col.iter().zip(&c).any(|(x, m)| !((x * BigInt::from(a)) % m).is_zero()) {
            return Err(LinalgError::NotWellDefined { generator: j, order: a });
        }
    }
    let (m, n) = (codomain.len(), domain.len());
    let mut cols: Vec<Vec<BigInt>> = (0..n).map(|j| matrix.column(j)).collect();
    for i in 0..m {
        let mut v = vec![BigInt::zero(); m];
        v[i] = c[i].clone();
        cols.push(v);
    }
    let kernel_gens: Vec<Vec<BigInt>> = if m == 0 {
        (0..n).map(|j| (0..n).map(|k| BigInt::from(u8::from(j == k))).collect()).collect()
    } else {
        integer_kernel(&IntMatrix::from_columns(m, &cols)).into_iter().map(|v| v[..n].to_vec()).collect()
    };
    let kernel = subgroup_presentation(domain, &kernel_gens);
    let image_gens: Vec<Vec<BigInt>> = (0..n).map(|j| matrix.column(j)).collect();
    let image = subgroup_presentation(codomain, &image_gens);
    Ok(KernelImage { kernel, image })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_is_a_factorisation() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let sm = smith(&m);
        assert_eq!(sm.u.mul(&m).mul(&sm.w), sm.s);
        assert_eq!(sm.u.mul(&sm.u_inv), IntMatrix::identity(3));
        assert_eq!(sm.diagonal(), big(&[2, 6, 12]));
    }

    #[test]
    fn kernel_and_solve() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert!(solve(&m, &big(&[1, 2])).is_some());
        assert!(solve(&m, &big(&[1, 3])).is_none());
    }

    #[test]
    fn identity_on_z2() {
        let ki = hom_kernel_image(&[2], &[2], &IntMatrix::from_rows(&[vec![1]])).unwrap();
        assert_eq!(ki.kernel.invariants, Vec::<u64>::new());
        assert_eq!(ki.image.invariants, vec![2]);
    }

    #[test]
    fn doubling_on_z4() {
        let ki = hom_kernel_image(&[4], &[4], &IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert_eq!(ki.kernel.invariants, vec![2]);
        assert_eq!(ki.kernel.generators, vec![big(&[2])]);
        assert_eq!(ki.image.invariants, vec![2]);
    }

    #[test]
    fn zero_map() {
        let ki = hom_kernel_image(&[2, 4], &[3], &IntMatrix::from_rows(&[vec![0, 0]])).unwrap();
        assert_eq!(ki.kernel.invariants, vec![2, 4]);
        assert_eq!(ki.image.order(), 1);
    }

    #[test]
    fn shape_and_definedness_errors() {
        let m = IntMatrix::from_rows(&[vec![1, 1]]);
        assert!(matches!(hom_kernel_image(&[2], &[2], &m), Err(LinalgError::MatrixShapeMismatch(_))));
        let m = IntMatrix::from_rows(&[vec![1]]);
        assert!(matches!(hom_kernel_image(&[2], &[4], &m), Err(LinalgError::NotWellDefined { .. })));
    }

    #[test]
    fn quotient_of_subgroups() {
        // ⟨1⟩ / ⟨4⟩ in ℤ/8 is ℤ/4
        let p = quotient_presentation(&[8], &[big(&[1])], &[big(&[4])]);
        assert_eq!(p.invariants, vec![4]);
    }
}

//! Dense-semantics complex linear operators on a labeled finite basis.
//!
//! Stored in compressed sparse column form: every operator built here (ladder
//! monomials, Lorentz generators, their products) touches a handful of
//! entries per column, and bracket checks read whole columns at a time.  The
//! public surface behaves like a dense dim x dim complex matrix.

use num_complex::Complex64;
use std::collections::BTreeMap;

/// Complex linear operator on a finite basis.
#[derive(Debug, Clone)]
pub struct LinearOperator {
    dim: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    vals: Vec<Complex64>,
    /// Descriptor of the underlying basis (oscillator occupations, spin
    /// components, tensor products of those).
    pub basis_label: String,
}

impl LinearOperator {
    pub fn zero(dim: usize) -> Self {
        LinearOperator {
            dim,
            col_ptr: vec![0; dim + 1],
            row_idx: Vec::new(),
            vals: Vec::new(),
            basis_label: String::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(dim: usize, z: Complex64) -> Self {
        let mut t = Vec::with_capacity(dim);
        for i in 0..dim {
            t.push((i, i, z));
        }
        Self::from_triplets(dim, t)
    }

    /// Build from (row, col, value) triplets; duplicates are summed.
    pub fn from_triplets(dim: usize, triplets: Vec<(usize, usize, Complex64)>) -> Self {
        debug_assert!(triplets.iter().all(|&(r, c, _)| r < dim && c < dim));
        Self::from_triplets_summed(dim, triplets)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.basis_label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Entries of column j as (row, value) pairs.
    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let lo = self.col_ptr[j];
        let hi = self.col_ptr[j + 1];
        self.row_idx[lo..hi]
            .iter()
            .zip(&self.vals[lo..hi])
            .map(|(&r, &v)| (r, v))
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.column(j)
            .find(|&(r, _)| r == i)
            .map(|(_, v)| v)
            .unwrap_or(Complex64::ZERO)
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut out = self.clone();
        for v in &mut out.vals {
            *v *= z;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.linear_combination(other, Complex64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.linear_combination(other, Complex64::new(-1.0, 0.0))
    }

    /// self + w * other.
    pub fn linear_combination(&self, other: &Self, w: Complex64) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        let mut triplets = Vec::with_capacity(self.nnz() + other.nnz());
        for j in 0..self.dim {
            for (r, v) in self.column(j) {
                triplets.push((r, j, v));
            }
            for (r, v) in other.column(j) {
                triplets.push((r, j, w * v));
            }
        }
        let mut out = Self::from_triplets_summed(self.dim, triplets);
        out.basis_label = self.basis_label.clone();
        out
    }

    /// Matrix product self * other.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        let dim = self.dim;
        let mut col_ptr = vec![0usize; dim + 1];
        let mut row_idx = Vec::new();
        let mut vals = Vec::new();
        let mut scratch: Vec<Complex64> = vec![Complex64::ZERO; dim];
        let mut touched: Vec<usize> = Vec::new();
        for j in 0..dim {
            for (k, bv) in other.column(j) {
                for (r, av) in self.column(k) {
                    if scratch[r] == Complex64::ZERO && !touched.contains(&r) {
                        touched.push(r);
                    }
                    scratch[r] += av * bv;
                }
            }
            touched.sort_unstable();
            for &r in &touched {
                let v = scratch[r];
                scratch[r] = Complex64::ZERO;
                if v != Complex64::ZERO {
                    row_idx.push(r);
                    vals.push(v);
                }
            }
            touched.clear();
            col_ptr[j + 1] = row_idx.len();
        }
        LinearOperator {
            dim,
            col_ptr,
            row_idx,
            vals,
            basis_label: self.basis_label.clone(),
        }
    }

    /// Commutator [self, other].
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut triplets = Vec::with_capacity(self.nnz());
        for j in 0..self.dim {
            for (r, v) in self.column(j) {
                triplets.push((j, r, v.conj()));
            }
        }
        let mut out = Self::from_triplets_summed(self.dim, triplets);
        out.basis_label = self.basis_label.clone();
        out
    }

    /// Kronecker product; basis index (i_a, i_b) -> i_a * other.dim + i_b.
    pub fn kron(&self, other: &Self) -> Self {
        let dim = self.dim * other.dim;
        let mut triplets = Vec::with_capacity(self.nnz() * other.nnz());
        for ja in 0..self.dim {
            for (ra, va) in self.column(ja) {
                for jb in 0..other.dim {
                    for (rb, vb) in other.column(jb) {
                        triplets.push((ra * other.dim + rb, ja * other.dim + jb, va * vb));
                    }
                }
            }
        }
        Self::from_triplets_summed(dim, triplets)
    }

    /// Apply to a dense vector.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim);
        let mut y = vec![Complex64::ZERO; self.dim];
        for (j, &xj) in x.iter().enumerate() {
            if xj == Complex64::ZERO {
                continue;
            }
            for (r, v) in self.column(j) {
                y[r] += v * xj;
            }
        }
        y
    }

    /// Apply to a sparse vector (index -> amplitude map).
    pub fn apply_sparse(&self, x: &BTreeMap<usize, Complex64>) -> BTreeMap<usize, Complex64> {
        let mut y = BTreeMap::new();
        for (&j, &xj) in x {
            for (r, v) in self.column(j) {
                let e = y.entry(r).or_insert(Complex64::ZERO);
                *e += v * xj;
            }
        }
        y.retain(|_, v| *v != Complex64::ZERO);
        y
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.vals.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm restricted to the columns selected by `mask`.
    pub fn frobenius_on_columns(&self, mask: &[bool]) -> f64 {
        assert_eq!(mask.len(), self.dim);
        let mut s = 0.0;
        for (j, &keep) in mask.iter().enumerate() {
            if keep {
                for (_, v) in self.column(j) {
                    s += v.norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    /// Max |A_ij - conj(A_ji)| over i, j both selected by `mask`.
    pub fn hermiticity_defect_on(&self, mask: &[bool]) -> f64 {
        let adj = self.adjoint();
        let diff = self.sub(&adj);
        let mut worst: f64 = 0.0;
        for (j, &keep) in mask.iter().enumerate() {
            if keep {
                for (r, v) in diff.column(j) {
                    if mask[r] {
                        worst = worst.max(v.norm());
                    }
                }
            }
        }
        worst
    }

    /// If the operator is lambda * identity (within tol, in max-abs norm),
    /// return lambda.
    pub fn as_scalar(&self, tol: f64) -> Option<Complex64> {
        if self.dim == 0 {
            return Some(Complex64::ZERO);
        }
        let lambda = self.entry(0, 0);
        for j in 0..self.dim {
            let mut saw_diag = false;
            for (r, v) in self.column(j) {
                if r == j {
                    saw_diag = true;
                    if (v - lambda).norm() > tol {
                        return None;
                    }
                } else if v.norm() > tol {
                    return None;
                }
            }
            if !saw_diag && lambda.norm() > tol {
                return None;
            }
        }
        Some(lambda)
    }

    /// Dense representation; intended for small test matrices.
    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let mut m = vec![vec![Complex64::ZERO; self.dim]; self.dim];
        for j in 0..self.dim {
            for (r, v) in self.column(j) {
                m[r][j] = v;
            }
        }
        m
    }

    fn from_triplets_summed(dim: usize, triplets: Vec<(usize, usize, Complex64)>) -> Self {
        let mut sorted = triplets;
        sorted.sort_by_key(|&(r, c, _)| (c, r));
        let mut col_ptr = vec![0usize; dim + 1];
        let mut row_idx: Vec<usize> = Vec::with_capacity(sorted.len());
        let mut vals: Vec<Complex64> = Vec::with_capacity(sorted.len());
        let mut cols: Vec<usize> = Vec::with_capacity(sorted.len());
        for (r, c, v) in sorted {
            if let (Some(&lr), Some(&lc)) = (row_idx.last(), cols.last()) {
                if lr == r && lc == c {
                    *vals.last_mut().unwrap() += v;
                    continue;
                }
            }
            row_idx.push(r);
            cols.push(c);
            vals.push(v);
        }
        // drop exact zeros created by cancellation
        let mut fr = Vec::with_capacity(row_idx.len());
        let mut fc = Vec::with_capacity(row_idx.len());
        let mut fv = Vec::with_capacity(row_idx.len());
        for ((r, c), v) in row_idx.into_iter().zip(cols).zip(vals) {
            if v != Complex64::ZERO {
                fr.push(r);
                fc.push(c);
                fv.push(v);
            }
        }
        for &c in &fc {
            col_ptr[c + 1] += 1;
        }
        for c in 0..dim {
            col_ptr[c + 1] += col_ptr[c];
        }
        LinearOperator {
            dim,
            col_ptr,
            row_idx: fr,
            vals: fv,
            basis_label: String::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn matmul_matches_dense() {
        let a = LinearOperator::from_triplets(
            3,
            vec![(0, 1, c(1.0, 0.0)), (2, 0, c(0.0, 2.0)), (1, 1, c(3.0, -1.0))],
        );
        let b = LinearOperator::from_triplets(
            3,
            vec![(1, 0, c(2.0, 0.0)), (0, 2, c(1.0, 1.0)), (2, 2, c(-1.0, 0.0))],
        );
        let ab = a.matmul(&b);
        let da = a.to_dense();
        let db = b.to_dense();
        for i in 0..3 {
            for j in 0..3 {
                let mut want = Complex64::ZERO;
                for k in 0..3 {
                    want += da[i][k] * db[k][j];
                }
                assert!((ab.entry(i, j) - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn adjoint_and_kron() {
        let a = LinearOperator::from_triplets(2, vec![(0, 1, c(1.0, 2.0))]);
        let adj = a.adjoint();
        assert_eq!(adj.entry(1, 0), c(1.0, -2.0));
        let i2 = LinearOperator::identity(2);
        let k = a.kron(&i2);
        assert_eq!(k.dim(), 4);
        assert_eq!(k.entry(0, 2), c(1.0, 2.0));
        assert_eq!(k.entry(1, 3), c(1.0, 2.0));
    }

    #[test]
    fn scalar_detection() {
        let s = LinearOperator::scalar(4, c(2.5, 0.0));
        assert_eq!(s.as_scalar(1e-14), Some(c(2.5, 0.0)));
        let ns = LinearOperator::from_triplets(4, vec![(0, 0, c(1.0, 0.0))]);
        assert_eq!(ns.as_scalar(1e-14), None);
    }

    #[test]
    fn duplicate_triplets_sum_and_cancel() {
        let a = LinearOperator::from_triplets_summed(
            2,
            vec![(0, 0, c(1.0, 0.0)), (0, 0, c(-1.0, 0.0)), (1, 0, c(2.0, 0.0))],
        );
        assert_eq!(a.nnz(), 1);
        assert_eq!(a.entry(1, 0), c(2.0, 0.0));
    }
}

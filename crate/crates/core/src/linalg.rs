//! Dense exact linear algebra over a field.
//!
//! Every subspace is stored by its unique reduced row echelon basis with
//! zero rows dropped, so subspace equality is structural equality and all
//! outputs are reproducible bit for bit.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a.clone() * b.clone();
                        out[(i, j)] = out[(i, j)].clone() + prod;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Kronecker product; row-major flattening, left factor most
    /// significant.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * other.rows + k, j * other.cols + l)] = a.clone() * b.clone();
                        }
                    }
                }
            }
        }
        out
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Unique reduced row echelon form, zero rows dropped. The column
    /// count is preserved even when every row vanishes.
    pub fn rref(&self) -> Self {
        let mut rows = self.row_vecs();
        rref_in_place(&mut rows);
        Matrix::from_rows_with_cols(rows, self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().rows
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug: Vec<Vec<S>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
                row
            })
            .collect();
        rref_in_place(&mut aug);
        if aug.len() < n {
            return None;
        }
        // Left half must be the identity for the matrix to be invertible.
        for (i, row) in aug.iter().enumerate() {
            for (j, e) in row[..n].iter().enumerate() {
                let want_one = i == j;
                if e.is_one() != want_one || (!want_one && !e.is_zero()) {
                    return None;
                }
            }
        }
        Some(Matrix::from_rows(
            aug.into_iter().map(|r| r[n..].to_vec()).collect(),
        ))
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.entries[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.entries[i * self.cols + j]
    }
}

/// Gauss-Jordan elimination to reduced row echelon form; zero rows are
/// removed. The result is the unique RREF of the row space.
#[allow(clippy::needless_range_loop)] // two rows are touched at once
fn rref_in_place<S: Scalar>(rows: &mut Vec<Vec<S>>) {
    if rows.is_empty() {
        return;
    }
    let cols = rows[0].len();
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(src) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = S::one() / rows[pivot_row][col].clone();
        for e in rows[pivot_row].iter_mut() {
            if !e.is_zero() {
                *e = e.clone() * inv.clone();
            }
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..cols {
                    let delta = factor.clone() * rows[pivot_row][c].clone();
                    rows[r][c] = rows[r][c].clone() - delta;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.retain(|r| r.iter().any(|e| !e.is_zero()));
}

/// A linear subspace of `K^n` in canonical form: the basis matrix is the
/// unique RREF of any spanning set, so `==` decides subspace equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<S> {
    ambient_dim: usize,
    basis: Matrix<S>,
}

impl<S: Scalar> Subspace<S> {
    /// Span of a list of vectors, canonicalized.
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<S>>) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "span vector has length {}, ambient is {ambient_dim}",
                    v.len()
                )));
            }
        }
        let mut rows = vectors;
        rref_in_place(&mut rows);
        Ok(Subspace {
            ambient_dim,
            basis: Matrix::from_rows_with_cols(rows, ambient_dim),
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix {
                rows: 0,
                cols: ambient_dim,
                entries: vec![],
            },
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    /// Column space of `m`, a subspace of `K^rows`.
    pub fn image(m: &Matrix<S>) -> Self {
        Subspace {
            ambient_dim: m.rows(),
            basis: m.transpose().rref(),
        }
    }

    /// Null space `{x : m x = 0}`, a subspace of `K^cols`, canonicalized.
    pub fn kernel(m: &Matrix<S>) -> Self {
        let red = m.rref();
        let cols = m.cols();
        let mut pivot_of_col = vec![None; cols];
        for r in 0..red.rows() {
            let lead = red
                .row(r)
                .iter()
                .position(|e| !e.is_zero())
                .expect("nonzero row");
            pivot_of_col[lead] = Some(r);
        }
        let mut gens = Vec::new();
        for free in 0..cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![S::zero(); cols];
            v[free] = S::one();
            for (col, pr) in pivot_of_col.iter().enumerate() {
                if let Some(r) = pr {
                    v[col] = -red[(*r, free)].clone();
                }
            }
            gens.push(v);
        }
        Subspace::span(cols, gens).expect("kernel vectors have ambient length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<S>> {
        self.basis.row_vecs()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {} differ",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Subspace::span(self.ambient_dim, rows)
    }

    /// Intersection via the kernel of stacked bases: a vector lies in both
    /// spaces iff some coefficient combination of the two bases agrees.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // Columns of `stacked` are the basis vectors of self and -other;
        // kernel elements (alpha, beta) satisfy alpha*A = beta*B.
        let ka = self.dim();
        let kb = other.dim();
        let stacked = Matrix::from_fn(self.ambient_dim, ka + kb, |i, j| {
            if j < ka {
                self.basis[(j, i)].clone()
            } else {
                -other.basis[(j - ka, i)].clone()
            }
        });
        let ker = Subspace::kernel(&stacked);
        let vectors = ker
            .basis_rows()
            .into_iter()
            .map(|coef| {
                let mut v = vec![S::zero(); self.ambient_dim];
                for (r, c) in coef[..ka].iter().enumerate() {
                    if !c.is_zero() {
                        for (x, b) in v.iter_mut().zip(self.basis.row(r)) {
                            *x = x.clone() + c.clone() * b.clone();
                        }
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient_dim, vectors)
    }

    pub fn contains(&self, v: &[S]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        self.reduce(v).iter().all(|e| e.is_zero())
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis_rows().iter().all(|v| self.contains(v))
    }

    /// Canonical remainder of `v` after elimination against the RREF
    /// basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut w = v.to_vec();
        for r in 0..self.basis.rows() {
            let lead = self
                .basis
                .row(r)
                .iter()
                .position(|e| !e.is_zero())
                .expect("nonzero row");
            if !w[lead].is_zero() {
                let factor = w[lead].clone();
                for (x, b) in w.iter_mut().zip(self.basis.row(r)) {
                    if !b.is_zero() {
                        *x = x.clone() - factor.clone() * b.clone();
                    }
                }
            }
        }
        w
    }

    /// `{lambda : <lambda, v> = 0 for all v in self}` where the bracket is
    /// `lambda^T P v` for the given nondegenerate pairing matrix `P`.
    pub fn annihilator(&self, pairing: &Matrix<S>) -> Result<Self> {
        if pairing.rows() != self.ambient_dim || pairing.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "pairing is {}x{}, ambient is {}",
                pairing.rows(),
                pairing.cols(),
                self.ambient_dim
            )));
        }
        if pairing.rank() != self.ambient_dim {
            return Err(Error::DegeneratePairing);
        }
        if self.is_zero() {
            return Ok(Subspace::full(self.ambient_dim));
        }
        Ok(Subspace::kernel(&self.basis.mul(&pairing.transpose())))
    }
}

impl<S: Scalar> Matrix<S> {
    fn from_rows_with_cols(rows: Vec<Vec<S>>, cols: usize) -> Self {
        if rows.is_empty() {
            Matrix {
                rows: 0,
                cols,
                entries: vec![],
            }
        } else {
            Matrix::from_rows(rows)
        }
    }
}

/// Kronecker product of coordinate vectors: `(u (x) v)[(i,j)] = u[i] v[j]`
/// in row-major flattening.
pub fn tensor_vec<S: Scalar>(u: &[S], v: &[S]) -> Vec<S> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for a in u {
        for b in v {
            out.push(if a.is_zero() || b.is_zero() {
                S::zero()
            } else {
                a.clone() * b.clone()
            });
        }
    }
    out
}

/// Unit coordinate vector `e_i` of length `n`.
pub fn unit_vec<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rat};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
    }

    fn v(entries: Vec<i64>) -> Vec<Rat> {
        entries.into_iter().map(rat).collect()
    }

    #[test]
    fn rref_rank_one_collapse() {
        assert_eq!(m(vec![vec![2, 4], vec![1, 2]]).rref(), m(vec![vec![1, 2]]));
    }

    #[test]
    fn rref_identity_fixed_point() {
        let id = Matrix::<Rat>::identity(3);
        assert_eq!(id.rref(), id);
    }

    #[test]
    fn rref_zero_matrix_drops_rows() {
        assert_eq!(m(vec![vec![0, 0]]).rref().rows(), 0);
    }

    #[test]
    fn generic_scalar_admits_floats() {
        // The scalar abstraction is satisfied by floats too; exactness
        // guarantees only hold over an exact field, but the algorithms
        // are type-agnostic.
        let a = Matrix::<f64>::from_rows(vec![vec![2.0, 4.0], vec![1.0, 2.0]]);
        assert_eq!(a.rref().rows(), 1);
        assert_eq!(Subspace::kernel(&a).dim(), 1);
    }

    #[test]
    fn kernel_of_row_sum() {
        let k = Subspace::kernel(&m(vec![vec![1, 1]]));
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&v(vec![1, -1])));
    }

    #[test]
    fn image_of_identity_is_full() {
        assert_eq!(
            Subspace::image(&Matrix::<Rat>::identity(2)),
            Subspace::full(2)
        );
    }

    #[test]
    fn kernel_dim_of_rank3_4x6() {
        // 4x6 with rank 3 by construction; rank cross-checked by an
        // independent elimination oracle below.
        let a = m(vec![
            vec![1, 0, 2, -1, 3, 0],
            vec![0, 1, 1, 1, 0, 2],
            vec![2, -1, 3, 0, 1, 1],
            vec![3, 0, 6, -3, 9, 0], // 3 * row 0
        ]);
        assert_eq!(oracle_rank(&a), 3);
        assert_eq!(Subspace::kernel(&a).dim(), 6 - 3);
    }

    /// Forward Gaussian elimination rank oracle, independent of rref().
    #[allow(clippy::needless_range_loop)]
    fn oracle_rank(a: &Matrix<Rat>) -> usize {
        let mut rows = a.row_vecs();
        let mut rank = 0;
        for col in 0..a.cols() {
            if let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) {
                rows.swap(rank, p);
                for r in rank + 1..rows.len() {
                    if !rows[r][col].is_zero() {
                        let f = rows[r][col].clone() / rows[rank][col].clone();
                        for c in col..a.cols() {
                            let d = f.clone() * rows[rank][c].clone();
                            rows[r][c] -= d;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn sum_intersect_with_zero() {
        let x = Subspace::span(3, vec![v(vec![1, 2, 3]), v(vec![0, 1, 0])]).unwrap();
        let zero = Subspace::zero(3);
        assert_eq!(x.sum(&zero).unwrap(), x);
        assert_eq!(x.intersect(&zero).unwrap(), zero);
    }

    #[test]
    fn contains_simple() {
        let s = Subspace::span(2, vec![v(vec![1, 0]), v(vec![0, 1])]).unwrap();
        assert!(s.contains(&v(vec![3, -7])));
    }

    #[test]
    fn modular_law_on_random_pair() {
        // Two 3-dim subspaces of Q^5.
        let a = Subspace::span(
            5,
            vec![
                v(vec![1, 0, 2, 0, 1]),
                v(vec![0, 1, 1, 1, 0]),
                v(vec![0, 0, 1, -1, 2]),
            ],
        )
        .unwrap();
        let b = Subspace::span(
            5,
            vec![
                v(vec![1, 1, 0, 0, 0]),
                v(vec![0, 2, 1, 0, 1]),
                v(vec![1, 0, 0, 1, 1]),
            ],
        )
        .unwrap();
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        assert!(s.contains_subspace(&a) && s.contains_subspace(&b));
        assert!(a.contains_subspace(&i) && b.contains_subspace(&i));
    }

    #[test]
    fn annihilator_extremes() {
        let p = Matrix::<Rat>::identity(4);
        assert_eq!(
            Subspace::zero(4).annihilator(&p).unwrap(),
            Subspace::full(4)
        );
        assert_eq!(
            Subspace::full(4).annihilator(&p).unwrap(),
            Subspace::zero(4)
        );
    }

    #[test]
    fn annihilator_double_is_identity() {
        let s = Subspace::span(4, vec![v(vec![1, 2, 0, -1]), v(vec![0, 1, 1, 1])]).unwrap();
        let p = Matrix::<Rat>::identity(4);
        let ann = s.annihilator(&p).unwrap();
        assert_eq!(ann.dim(), 4 - s.dim());
        assert_eq!(ann.annihilator(&p.transpose()).unwrap(), s);
    }

    #[test]
    fn annihilator_rejects_degenerate_pairing() {
        let s = Subspace::span(2, vec![v(vec![1, 0])]).unwrap();
        let p = m(vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(s.annihilator(&p), Err(Error::DegeneratePairing));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(vec![vec![2, 1, 0], vec![0, 1, -1], vec![1, 0, 3]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(m(vec![vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    fn small_matrix() -> impl Strategy<Value = Matrix<Rat>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |ints| Matrix {
                rows: r,
                cols: c,
                entries: ints.into_iter().map(rat).collect(),
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(a in small_matrix()) {
            let r = a.rref();
            prop_assert_eq!(r.rref(), r);
        }

        #[test]
        fn span_is_representation_independent(a in small_matrix(), scale in 1i64..4) {
            // Row-scaled and row-augmented spanning sets give the same
            // canonical subspace.
            let rows = a.row_vecs();
            let mut shuffled: Vec<Vec<Rat>> = rows.iter().rev().cloned().collect();
            shuffled.push(rows[0].iter().map(|e| e.clone() * rat(scale)).collect());
            let s1 = Subspace::span(a.cols(), rows).unwrap();
            let s2 = Subspace::span(a.cols(), shuffled).unwrap();
            prop_assert_eq!(s1, s2);
        }

        #[test]
        fn rank_nullity(a in small_matrix()) {
            prop_assert_eq!(Subspace::kernel(&a).dim() + a.rank(), a.cols());
        }

        #[test]
        fn modular_dimension_law(a in small_matrix(), b in small_matrix()) {
            let n = 6;
            let pad = |m: &Matrix<Rat>| -> Vec<Vec<Rat>> {
                m.row_vecs().into_iter().map(|mut r| { r.resize(n, rat(0)); r }).collect()
            };
            let sa = Subspace::span(n, pad(&a)).unwrap();
            let sb = Subspace::span(n, pad(&b)).unwrap();
            let sum = sa.sum(&sb).unwrap();
            let int = sa.intersect(&sb).unwrap();
            prop_assert_eq!(sum.dim() + int.dim(), sa.dim() + sb.dim());
        }

        #[test]
        fn kernel_vectors_are_in_kernel(a in small_matrix()) {
            let k = Subspace::kernel(&a);
            for row in k.basis_rows() {
                prop_assert!(a.mul_vec(&row).iter().all(|e| e.is_zero()));
            }
        }
    }
}

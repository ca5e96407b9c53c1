//! Formats, tensor-index bookkeeping and the Koszul sign calculus.
//!
//! Conventions used by every module above this one:
//!
//! - bases are homogeneous; a *format* assigns a parity to each ordered
//!   basis index;
//! - tensor flattening is row-major with the leftmost factor most
//!   significant;
//! - the dual of a tensor product is identified with the tensor product
//!   of the duals through the signed pairing
//!   `<l (x) m, v (x) w> = (-1)^{[m][v]} l(v) m(w)`, never through the
//!   unsigned identification.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Z_2 parity of a basis vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Result<Self> {
        match bit {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            other => Err(Error::Invalid(format!(
                "parity must be 0 or 1, got {other}"
            ))),
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Parity assignment of an ordered homogeneous basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Format(Vec<Parity>);

impl Format {
    pub fn new(parities: Vec<Parity>) -> Self {
        Format(parities)
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        Ok(Format(
            bits.iter()
                .map(|&b| Parity::from_bit(b))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn all_even(dim: usize) -> Self {
        Format(vec![Parity::Even; dim])
    }

    pub fn empty() -> Self {
        Format(vec![])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.0[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.0
    }

    pub fn bits(&self) -> Vec<u8> {
        self.0.iter().map(|p| p.bit()).collect()
    }

    pub fn is_all_even(&self) -> bool {
        self.0.iter().all(|p| !p.is_odd())
    }

    /// Format of `V (x) W`: flat index `(i,a)` carries parity
    /// `k_i + l_a`.
    pub fn tensor(&self, other: &Format) -> Format {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for &p in &self.0 {
            for &q in &other.0 {
                out.push(p + q);
            }
        }
        Format(out)
    }

    /// Format of `V (+) W`: concatenation.
    pub fn concat(&self, other: &Format) -> Format {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Format(out)
    }

    /// Parity change: every index flips.
    pub fn flip(&self) -> Format {
        Format(self.0.iter().map(|p| p.flip()).collect())
    }

    /// Permutation reordering this format to the standard one (all even
    /// indices first), as `perm[new_pos] = old_pos`. Stable on each block.
    pub fn standard_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by_key(|&i| self.0[i].is_odd());
        order
    }
}

/// Row-major flattening of a multi-factor tensor index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorShape(Vec<usize>);

impl TensorShape {
    pub fn new(factor_dims: Vec<usize>) -> Self {
        TensorShape(factor_dims)
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn flatten(&self, multi: &[usize]) -> usize {
        assert_eq!(multi.len(), self.0.len());
        multi.iter().zip(&self.0).fold(0, |acc, (&i, &d)| {
            debug_assert!(i < d);
            acc * d + i
        })
    }

    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for (slot, &d) in self.0.iter().enumerate().rev() {
            out[slot] = flat % d;
            flat /= d;
        }
        out
    }
}

/// Signed permutation matrix of the Koszul symmetry on a tensor product.
///
/// `perm[a]` is the target slot of source factor `a`; on basis vectors the
/// factor indices travel with their factors and each crossing of two odd
/// factors contributes a sign `-1`. Rows are indexed by the flattened
/// target space (factors reordered), columns by the source.
pub fn koszul_permutation<S: Scalar>(formats: &[Format], perm: &[usize]) -> Result<Matrix<S>> {
    let n = formats.len();
    if perm.len() != n {
        return Err(Error::Invalid(format!(
            "permutation arity {} != {} factors",
            perm.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::Invalid(
                "not a permutation of the factor positions".into(),
            ));
        }
        seen[p] = true;
    }
    let src_shape = TensorShape::new(formats.iter().map(Format::dim).collect());
    let mut tgt_dims = vec![0; n];
    for (a, &p) in perm.iter().enumerate() {
        tgt_dims[p] = formats[a].dim();
    }
    let tgt_shape = TensorShape::new(tgt_dims);
    let total = src_shape.total();
    let mut out = Matrix::zeros(total, total);
    for flat_src in 0..total {
        let multi = src_shape.unflatten(flat_src);
        let mut tgt_multi = vec![0; n];
        for (a, &i) in multi.iter().enumerate() {
            tgt_multi[perm[a]] = i;
        }
        let mut negative = false;
        for a in 0..n {
            for b in a + 1..n {
                if perm[a] > perm[b]
                    && formats[a].parity(multi[a]).is_odd()
                    && formats[b].parity(multi[b]).is_odd()
                {
                    negative = !negative;
                }
            }
        }
        out[(tgt_shape.flatten(&tgt_multi), flat_src)] = S::sign(negative);
    }
    Ok(out)
}

/// Two-factor Koszul swap `v (x) w -> (-1)^{[v][w]} w (x) v`.
pub fn koszul_swap<S: Scalar>(f: &Format, g: &Format) -> Matrix<S> {
    koszul_permutation(&[f.clone(), g.clone()], &[1, 0]).expect("valid permutation")
}

/// `sigma^(23)` on a four-factor product.
pub fn sigma23<S: Scalar>(f1: &Format, f2: &Format, f3: &Format, f4: &Format) -> Matrix<S> {
    koszul_permutation(
        &[f1.clone(), f2.clone(), f3.clone(), f4.clone()],
        &[0, 2, 1, 3],
    )
    .expect("valid permutation")
}

/// Pairing of `V_1* (x) ... (x) V_n*` with `V_1 (x) ... (x) V_n` obtained
/// by iterating the signed two-factor identification. Diagonal with
/// entries `(-1)^{sum_{a<b} p_a p_b}` over the matched basis indices.
pub fn dual_pairing_multi<S: Scalar>(formats: &[&Format]) -> Matrix<S> {
    let shape = TensorShape::new(formats.iter().map(|f| f.dim()).collect());
    let total = shape.total();
    let mut out = Matrix::zeros(total, total);
    for flat in 0..total {
        let multi = shape.unflatten(flat);
        let mut negative = false;
        for a in 0..formats.len() {
            for b in a + 1..formats.len() {
                if formats[a].parity(multi[a]).is_odd() && formats[b].parity(multi[b]).is_odd() {
                    negative = !negative;
                }
            }
        }
        out[(flat, flat)] = S::sign(negative);
    }
    out
}

/// Pairing of `W* (x) W*` with `W (x) W`; the matrix through which all
/// quadratic-relation annihilators are taken.
pub fn dual_pairing<S: Scalar>(f: &Format) -> Matrix<S> {
    dual_pairing_multi(&[f, f])
}

/// `A_W = (1 - sigma)/2` on `W (x) W`.
pub fn super_antisymmetrizer<S: Scalar>(f: &Format) -> Matrix<S> {
    let sigma: Matrix<S> = koszul_swap(f, f);
    let id = Matrix::identity(sigma.rows());
    id.sub(&sigma).scale(&S::one_half())
}

/// `S_W = (1 + sigma)/2` on `W (x) W`.
pub fn super_symmetrizer<S: Scalar>(f: &Format) -> Matrix<S> {
    let sigma: Matrix<S> = koszul_swap(f, f);
    let id = Matrix::identity(sigma.rows());
    id.add(&sigma).scale(&S::one_half())
}

/// An operator on the tensor square is even when it never connects basis
/// vectors of different total parity.
pub fn is_even_on_square<S: Scalar>(m: &Matrix<S>, f: &Format) -> bool {
    let tf = f.tensor(f);
    if m.rows() != tf.dim() || m.cols() != tf.dim() {
        return false;
    }
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m[(r, c)].is_zero() && tf.parity(r) != tf.parity(c) {
                return false;
            }
        }
    }
    true
}

//! Seeded random fixtures for the identity suites and property tests.
//!
//! All randomness flows through a hand-rolled splitmix64 generator so
//! that fixture families are reproducible bit for bit across platforms
//! from a single seed.

use num_traits::Zero;

use crate::linalg::Matrix;
use crate::manin::{universal_manin_algebra, AlgebraMatrix, Ambient};
use crate::quadratic::{Idempotent, QuadraticSuperAlgebra};
use crate::superlin::{Format, Parity};
use crate::{rat, Rat};

/// splitmix64.
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn parity(&mut self) -> Parity {
        if self.next_u64() & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Small integer scalar in `[-2, 2]`.
    pub fn small_rat(&mut self) -> Rat {
        rat(self.below(5) as i64 - 2)
    }

    /// Small nonzero integer scalar.
    pub fn small_nonzero(&mut self) -> Rat {
        loop {
            let r = self.small_rat();
            if !r.is_zero() {
                return r;
            }
        }
    }
}

pub fn random_format(rng: &mut Rng, max_dim: usize) -> Format {
    let dim = 1 + rng.below(max_dim);
    Format::new((0..dim).map(|_| rng.parity()).collect())
}

/// Random quadratic super-algebra: each relation vector is drawn inside
/// a single parity block of `V (x) V`.
pub fn random_algebra(rng: &mut Rng, max_dim: usize) -> QuadraticSuperAlgebra<Rat> {
    let format = random_format(rng, max_dim);
    random_algebra_on(rng, format)
}

pub fn random_algebra_on(rng: &mut Rng, format: Format) -> QuadraticSuperAlgebra<Rat> {
    let d = format.dim();
    let tf = format.tensor(&format);
    let even_coords: Vec<usize> = (0..d * d).filter(|&i| !tf.parity(i).is_odd()).collect();
    let odd_coords: Vec<usize> = (0..d * d).filter(|&i| tf.parity(i).is_odd()).collect();
    let count = rng.below(d * d + 1);
    let mut vectors = Vec::with_capacity(count);
    for _ in 0..count {
        let block = if odd_coords.is_empty() || (rng.next_u64() & 1 == 0 && !even_coords.is_empty())
        {
            &even_coords
        } else {
            &odd_coords
        };
        let mut v = vec![rat(0); d * d];
        for &pos in block.iter() {
            v[pos] = rng.small_rat();
        }
        vectors.push(v);
    }
    QuadraticSuperAlgebra::from_relations(format, vectors)
        .expect("block-supported vectors are parity homogeneous")
}

/// Random even invertible matrix on the tensor square of `format`.
pub fn random_invertible_even(rng: &mut Rng, format: &Format) -> Matrix<Rat> {
    let tf = format.tensor(format);
    let n = tf.dim();
    loop {
        let mut q = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                if tf.parity(r) == tf.parity(c) {
                    q[(r, c)] = if r == c {
                        rng.small_nonzero()
                    } else {
                        rng.small_rat()
                    };
                }
            }
        }
        if q.inverse().is_some() {
            return q;
        }
    }
}

/// Random idempotent: a diagonal 0/1 projector conjugated by a random
/// even invertible matrix.
pub fn random_idempotent(rng: &mut Rng, max_dim: usize) -> Idempotent<Rat> {
    let format = random_format(rng, max_dim);
    random_idempotent_on(rng, format)
}

pub fn random_idempotent_on(rng: &mut Rng, format: Format) -> Idempotent<Rat> {
    let n = format.dim() * format.dim();
    let mut proj = Matrix::zeros(n, n);
    for i in 0..n {
        if rng.next_u64() & 1 == 0 {
            proj[(i, i)] = rat(1);
        }
    }
    let q = random_invertible_even(rng, &format);
    let qinv = q.inverse().expect("checked invertible");
    let b = q.mul(&proj).mul(&qinv);
    Idempotent::new(format, b).expect("conjugated projector is an even idempotent")
}

/// Random first-order matrix over the free algebra on the tensor format:
/// each entry is a random combination of the ambient generators of the
/// right parity.
pub fn random_free_matrix(
    rng: &mut Rng,
    row_format: &Format,
    col_format: &Format,
) -> AlgebraMatrix<Rat> {
    let gens = row_format.tensor(col_format);
    let ambient = QuadraticSuperAlgebra::free(gens.clone());
    let mut entries = Vec::new();
    for i in 0..row_format.dim() {
        for a in 0..col_format.dim() {
            let want = row_format.parity(i) + col_format.parity(a);
            let coords: Vec<Rat> = (0..gens.dim())
                .map(|p| {
                    if gens.parity(p) == want {
                        rng.small_rat()
                    } else {
                        rat(0)
                    }
                })
                .collect();
            entries.push(coords);
        }
    }
    AlgebraMatrix::new(
        row_format.clone(),
        col_format.clone(),
        Ambient::Algebra(ambient),
        entries,
    )
    .expect("parity-filtered entries")
}

/// Random scalar matrix (nonzero entries only where the formats agree).
pub fn random_scalar_matrix(
    rng: &mut Rng,
    row_format: &Format,
    col_format: &Format,
) -> AlgebraMatrix<Rat> {
    let mut entries = Vec::new();
    for i in 0..row_format.dim() {
        for a in 0..col_format.dim() {
            let v = if row_format.parity(i) == col_format.parity(a) {
                rng.small_rat()
            } else {
                rat(0)
            };
            entries.push(vec![v]);
        }
    }
    AlgebraMatrix::new(
        row_format.clone(),
        col_format.clone(),
        Ambient::Field,
        entries,
    )
    .expect("parity-filtered scalar entries")
}

/// A mixed family of entry matrices with their idempotent pair: some
/// certainly Manin (universal, scalar identity), some generically not.
pub fn manin_test_matrices(
    rng: &mut Rng,
    max_dim: usize,
) -> Vec<(AlgebraMatrix<Rat>, Idempotent<Rat>, Idempotent<Rat>)> {
    let b = random_idempotent(rng, max_dim);
    let bt = random_idempotent(rng, max_dim);
    let mut out = Vec::new();
    let u = universal_manin_algebra(&b, &bt);
    out.push((u.universal_matrix(), b.clone(), bt.clone()));
    out.push((
        random_free_matrix(rng, b.format(), bt.format()),
        b.clone(),
        bt.clone(),
    ));
    out.push((
        random_scalar_matrix(rng, b.format(), bt.format()),
        b.clone(),
        bt.clone(),
    ));
    if b.format() == bt.format() {
        out.push((AlgebraMatrix::identity_scalar(b.format().clone()), b, bt));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rng_is_deterministic() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn random_idempotents_validate() {
        let mut rng = Rng::new(7);
        for _ in 0..20 {
            let b = random_idempotent(&mut rng, 2);
            let m = b.matrix();
            assert_eq!(&m.mul(m), m);
        }
    }

    #[test]
    fn random_algebras_have_homogeneous_relations() {
        let mut rng = Rng::new(11);
        for _ in 0..30 {
            let a = random_algebra(&mut rng, 2);
            let tf = a.gen_format().tensor(a.gen_format());
            for row in a.relations().basis_rows() {
                let parities: Vec<_> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, _)| tf.parity(i))
                    .collect();
                assert!(parities.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }
}

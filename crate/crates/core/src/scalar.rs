//! Scalar abstraction for the ground field.

use std::fmt::{Debug, Display};

use num_traits::{Num, Signed};

/// Field-like scalar the linear algebra and sign calculus are generic
/// over.
///
/// `Num` supplies ring operations, division and exact comparison with
/// zero/one; `Neg` is needed for Koszul signs. `num_rational::BigRational`
/// is the canonical implementation; `f32`/`f64` satisfy the bounds too,
/// but exact subspace canonicalization is only meaningful over an exact
/// field.
pub trait Scalar: Num + Signed + Clone + PartialEq + Debug + Display {
    /// `-1` or `+1` depending on the flag. Used for Koszul signs.
    fn sign(negative: bool) -> Self {
        if negative {
            -Self::one()
        } else {
            Self::one()
        }
    }

    /// 1/2, the coefficient of the super-(anti)symmetrizers.
    fn one_half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }
}

impl<T> Scalar for T where T: Num + Signed + Clone + PartialEq + Debug + Display {}

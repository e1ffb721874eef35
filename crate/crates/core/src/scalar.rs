//! Scalar and weight abstractions.
//!
//! Vector-space code is generic over [`Scalar`] (any `num_traits::Num` that is
//! `Copy` and ordered: `f32`, `f64`, `Ratio<i64>`). Morphisms of both backends
//! are sparse matrices over a [`Weight`] semiring; relations use [`Boolean`].

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Numeric type usable as a vector-space weight.
pub trait Scalar:
    Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static
{
    /// Lossy conversion used for printing and JSON output.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static
{
}

/// A commutative semiring of matrix entries.
pub trait Weight: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl<T: Scalar> Weight for T {
    fn zero() -> Self {
        T::zero()
    }
    fn one() -> Self {
        T::one()
    }
    fn add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// The two-element semiring `({false, true}, or, and)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Boolean(pub bool);

impl Weight for Boolean {
    fn zero() -> Self {
        Boolean(false)
    }
    fn one() -> Self {
        Boolean(true)
    }
    fn add(&self, other: &Self) -> Self {
        Boolean(self.0 || other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Boolean(self.0 && other.0)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn boolean_semiring_tables() {
        let t = Boolean(true);
        let f = Boolean(false);
        assert_eq!(t.add(&f), t);
        assert_eq!(f.add(&f), f);
        assert_eq!(t.mul(&f), f);
        assert_eq!(t.mul(&t), t);
        assert!(Boolean::zero().is_zero());
        assert!(!Boolean::one().is_zero());
    }

    #[test]
    fn scalars_are_weights() {
        fn dot<W: Weight>(a: &[W], b: &[W]) -> W {
            a.iter().zip(b).fold(W::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
        }
        assert_eq!(dot(&[1.0f64, 2.0], &[3.0, 4.0]), 11.0);
        assert_eq!(dot(&[1.5f32, 2.0], &[2.0, 0.5]), 4.0);
        let half = Ratio::new(1i64, 2);
        assert_eq!(dot(&[half, half], &[half, half]), half);
    }
}

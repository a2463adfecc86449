//! Scalar fields for the polynomial and series paths.
//!
//! Everything that stays piecewise polynomial (monodromy matrices of atomic
//! systems, the iterated integrals behind the power series of `U(x, λ)`) is
//! generic over [`Field`]. `f64` gives the fast floating path; `BigRational`
//! gives exact arithmetic, since every finite `f64` is itself a rational.

use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Exact embedding of a finite double.
    fn from_real(value: f64) -> Self;

    fn to_real(&self) -> f64;
}

impl Field for f64 {
    fn from_real(value: f64) -> Self {
        value
    }

    fn to_real(&self) -> f64 {
        *self
    }
}

impl Field for BigRational {
    fn from_real(value: f64) -> Self {
        BigRational::from_float(value).expect("finite value")
    }

    fn to_real(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

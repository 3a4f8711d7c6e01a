//! Scalar abstraction: every numerical routine in this crate is generic over a
//! floating-point type implementing [`Real`].

use std::fmt;
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar usable throughout the crate: `f32` or `f64` (or any
/// other type satisfying the bounds).
pub trait Real:
    Float
    + FromPrimitive
    + NumAssign
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + NumAssign
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Sum<Self>
        + fmt::Debug
        + fmt::Display
        + fmt::LowerExp
        + Send
        + Sync
        + 'static
{
}

/// Complex scalar over a [`Real`] base type.
pub type C<T> = Complex<T>;

/// Converts an `f64` constant into the working scalar type.
///
/// Panics only if the target type cannot represent ordinary finite constants,
/// which no sensible `Real` implementation does.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("constant not representable in scalar type")
}

/// Converts a `usize` (matrix dimension, index) into the working scalar type.
#[inline]
pub fn real_of_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("usize not representable in scalar type")
}

#[inline]
pub fn c_zero<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn c_one<T: Real>() -> C<T> {
    Complex::new(T::one(), T::zero())
}

#[inline]
pub fn c_real<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}

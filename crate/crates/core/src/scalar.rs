//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the numerics are generic over (`f32`, `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[cfg(test)]
pub(crate) fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

#[inline]
pub(crate) fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Distance from `x` to the nearest integer.
#[inline]
pub(crate) fn dist_to_int<T: Real>(x: Complex<T>) -> T {
    let n = x.re.round();
    ((x.re - n).powi(2) + x.im.powi(2)).sqrt()
}

/// Distance from `x` to the nearest nonpositive integer.
pub(crate) fn dist_to_nonpos_int<T: Real>(x: Complex<T>) -> T {
    let n = x.re.round().min(T::zero());
    ((x.re - n).powi(2) + x.im.powi(2)).sqrt()
}

/// `exp(e * log z)` with `arg z` taken in `(0, 2π]`; the positive real axis maps to `2π`.
pub(crate) fn pow_arg_0_2pi<T: Real>(z: Complex<T>, e: Complex<T>) -> Complex<T> {
    (e * log_arg_0_2pi(z)).exp()
}

pub(crate) fn log_arg_0_2pi<T: Real>(z: Complex<T>) -> Complex<T> {
    let mut arg = z.im.atan2(z.re);
    if arg <= T::zero() {
        arg = arg + T::TAU();
    }
    Complex::new(z.norm().ln(), arg)
}

/// Principal power `exp(e * Log z)`.
pub(crate) fn pow_principal<T: Real>(z: Complex<T>, e: Complex<T>) -> Complex<T> {
    (e * z.ln()).exp()
}

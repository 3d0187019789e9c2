use num_complex::Complex;

use super::data::WeierstrassData;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Value of the hyperbolic Gauss map, possibly the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GaussValue<T> {
    Finite(Complex<T>),
    Infinity,
}

impl<T: Real> GaussValue<T> {
    pub fn finite(self) -> Result<Complex<T>> {
        match self {
            GaussValue::Finite(g) => Ok(g),
            GaussValue::Infinity => Err(Error::GaussMapPole),
        }
    }
}

/// Hopf differential coefficient `P′Q − Q′P` and Gauss map `−P/Q`.
pub fn hopf_and_gauss<T: Real>(w: &WeierstrassData<T>, z: Complex<T>) -> (Complex<T>, GaussValue<T>) {
    let (p, q) = (w.p_at(z), w.q_at(z));
    let hopf = w.dp_at(z) * q - w.dq_at(z) * p;
    let gauss = if q.norm() == T::zero() { GaussValue::Infinity } else { GaussValue::Finite(-p / q) };
    (hopf, gauss)
}

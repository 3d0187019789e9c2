//! Gauge `D = B·C·M` taking solutions of the Fuchsian system to solutions
//! of `Ψ' = [[PQ, P²], [−Q², −PQ]] Ψ`.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::data::{Pairings, WeierstrassData};
use crate::error::{Error, Result};
use crate::fuchsian::FuchsianParams;
use crate::linalg::Mat2;
use crate::scalar::{pow_arg_0_2pi, Real};

const DENOM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeConstants<T> {
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
    pub gamma: Complex<T>,
    pub delta: Complex<T>,
    pub mu: Complex<T>,
    pub k: Complex<T>,
    pub alpha1: Complex<T>,
    pub alpha2: Complex<T>,
    pub beta1: Complex<T>,
    pub beta2: Complex<T>,
}

impl<T: Real> GaugeConstants<T> {
    pub fn fuchsian(&self) -> FuchsianParams<T> {
        FuchsianParams::new(self.alpha, self.beta, self.gamma, self.delta)
    }

    /// `det D = 2α/μ`.
    pub fn det_d(&self) -> Complex<T> {
        self.alpha * T::lit(2.0) / self.mu
    }
}

fn nonzero<T: Real>(x: Complex<T>, name: &str) -> Result<Complex<T>> {
    if !(x.norm() > T::lit(DENOM_TOL)) {
        return Err(Error::DegenerateData(format!("{name} vanishes")));
    }
    Ok(x)
}

pub fn gauge_constants<T: Real>(w: &WeierstrassData<T>, pr: &Pairings<T>) -> Result<GaugeConstants<T>> {
    let ([p0, _, pi], [q0, _, qi]) = w.trinoid_residues()?;
    let Pairings { s10, s0inf: s0i, s1inf: s1i, delta: dd } = *pr;
    let one = Complex::<T>::one();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let dd = nonzero(dd, "Delta")?;
    let alpha = (one - (one + s0i * four + s10 * four).sqrt()) / two;
    let c0 = nonzero(s0i + s10, "<p,q>_0inf + <p,q>_10")?;
    let beta = (s10 * (one - alpha * two) - s0i) / (c0 * two);
    let gamma = s0i * (s1i / dd + one / nonzero(alpha, "alpha")?);
    let den = nonzero(dd - s0i * s10 + (dd + s1i) * alpha, "delta denominator")?;
    let delta = dd / nonzero(s0i, "<p,q>_0inf")? * (dd + s1i * alpha) / den;
    let kden = nonzero(dd * dd + s10 * s0i * s1i, "Delta^2 + <p,q>_10 <p,q>_0inf <p,q>_1inf")?;
    let k = dd * (s0i * s10 - dd * alpha) / kden;
    let mu = nonzero(s0i * two * (one - k * s1i / dd), "mu")?;
    Ok(GaugeConstants {
        alpha,
        beta,
        gamma,
        delta,
        mu,
        k,
        alpha1: -pi * s10 / dd,
        alpha2: qi * s10 / dd,
        beta1: p0 * s1i / dd,
        beta2: -q0 * s1i / dd,
    })
}

/// `B = [[P, α₁z + β₁], [−Q, α₂z + β₂]]`, unimodular.
pub fn gauge_b<T: Real>(w: &WeierstrassData<T>, gc: &GaugeConstants<T>, z: Complex<T>) -> Mat2<T> {
    Mat2::new(w.p_at(z), gc.alpha1 * z + gc.beta1, -w.q_at(z), gc.alpha2 * z + gc.beta2)
}

/// `D(z)` with `√(z−1)` on the branch `arg(z−1) ∈ (0, 2π]`.
pub fn gauge_d<T: Real>(w: &WeierstrassData<T>, gc: &GaugeConstants<T>, z: Complex<T>) -> Mat2<T> {
    let s = pow_arg_0_2pi(z - T::one(), Complex::new(T::lit(0.5), T::zero()));
    let si = s.inv();
    let cm = Mat2::new(s, Complex::zero(), gc.k / z * si, si);
    let m = Mat2::new(gc.det_d(), Complex::zero(), Complex::one(), Complex::one());
    gauge_b(w, gc, z) * cm * m
}

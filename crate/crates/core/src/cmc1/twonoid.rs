//! Closed-form catenoid cousins: `P = p₀/z + p∞`, `Q = q₀/z + q∞`.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::data::WeierstrassData;
use crate::error::{Error, Result};
use crate::fuchsian::RESONANCE_TOL;
use crate::linalg::{Hermitian2, Mat2};
use crate::scalar::{dist_to_int, Real};

/// Magnitude below which `p₀q∞ − p∞q₀` or `λ` counts as zero.
pub const TWONOID_DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct TwonoidData<T> {
    pub p0: Complex<T>,
    pub p_inf: Complex<T>,
    pub q0: Complex<T>,
    pub q_inf: Complex<T>,
    /// `½√(1 + 4w)` with `w = p₀q∞ − p∞q₀`.
    pub lambda: Complex<T>,
    /// `√(w / 2λ)`
    pub c: Complex<T>,
    /// Hermitian right factor.
    pub frame: Mat2<T>,
}

impl<T: Real> TwonoidData<T> {
    /// Default frame `A = I`; rejects half-integer `λ`.
    pub fn new(p0: Complex<T>, p_inf: Complex<T>, q0: Complex<T>, q_inf: Complex<T>) -> Result<Self> {
        let t = Self::build(p0, p_inf, q0, q_inf, Mat2::identity())?;
        let two_l = t.lambda * T::lit(2.0);
        if dist_to_int(two_l) <= T::lit(RESONANCE_TOL) {
            return Err(Error::HalfIntegerLambda { lambda: t.lambda.re.as_f64() });
        }
        Ok(t)
    }

    /// Explicit Hermitian frame with determinant 1; allowed for any `λ`.
    pub fn with_frame(
        p0: Complex<T>,
        p_inf: Complex<T>,
        q0: Complex<T>,
        q_inf: Complex<T>,
        frame: Mat2<T>,
    ) -> Result<Self> {
        let h = Hermitian2::try_new(&frame)?;
        if (frame.det() - T::one()).norm() > T::lit(1e-10) {
            return Err(Error::DegenerateData(format!("frame determinant {} is not 1", frame.det())));
        }
        Self::build(p0, p_inf, q0, q_inf, *h.mat())
    }

    fn build(p0: Complex<T>, p_inf: Complex<T>, q0: Complex<T>, q_inf: Complex<T>, frame: Mat2<T>) -> Result<Self> {
        let w = p0 * q_inf - p_inf * q0;
        let tol = T::lit(TWONOID_DEGENERACY_TOL);
        if w.norm() <= tol {
            return Err(Error::DegenerateData("p0*qinf - pinf*q0 vanishes".into()));
        }
        let lambda = (Complex::<T>::one() + w * T::lit(4.0)).sqrt() * T::lit(0.5);
        if lambda.norm() <= tol {
            return Err(Error::DegenerateData("p0*qinf - pinf*q0 = -1/4 gives lambda = 0".into()));
        }
        let c = (w / (lambda * T::lit(2.0))).sqrt();
        Ok(Self { p0, p_inf, q0, q_inf, lambda, c, frame })
    }

    pub fn pairing(&self) -> Complex<T> {
        self.p0 * self.q_inf - self.p_inf * self.q0
    }

    /// The same data as a one-puncture Weierstrass record.
    pub fn weierstrass(&self) -> WeierstrassData<T> {
        WeierstrassData {
            punctures: vec![Complex::zero()],
            p: vec![self.p0],
            q: vec![self.q0],
            p_inf: self.p_inf,
            q_inf: self.q_inf,
        }
    }

    /// `Ψ = Ψ₀A` with principal powers of `z`.
    pub fn psi(&self, z: Complex<T>) -> Result<Mat2<T>> {
        if z.norm() == T::zero() {
            return Err(Error::DegenerateData("z = 0 is the puncture".into()));
        }
        let w = self.pairing();
        let one = Complex::<T>::one();
        let two = T::lit(2.0);
        let b = Mat2::new(self.p0 / z + self.p_inf, self.p0 / w, -(self.q0 / z + self.q_inf), -self.q0 / w);
        let lz = z.ln();
        let half = Mat2::diag((lz * T::lit(0.5)).exp(), (-lz * T::lit(0.5)).exp());
        let cm = Mat2::new(
            (self.lambda * two - one) / (w * two),
            -(self.lambda * two + one) / (w * two),
            one,
            one,
        );
        let pw = Mat2::diag((lz * self.lambda).exp(), (-lz * self.lambda).exp());
        Ok((b * half * cm * pw).scale(self.c) * self.frame)
    }

    pub fn immersion(&self, z: Complex<T>) -> Result<Hermitian2<T>> {
        let psi = self.psi(z)?;
        Ok(Hermitian2::symmetrize(&(psi * psi.adjoint())))
    }

    /// `−A⁻¹ diag(e^{2πiλ}, e^{−2πiλ}) A`.
    pub fn monodromy(&self) -> Result<Mat2<T>> {
        let e = (self.lambda * Complex::new(T::zero(), T::TAU())).exp();
        Ok(-(self.frame.inverse()? * Mat2::diag(e, e.inv()) * self.frame))
    }
}

/// `Ψ(z)` for twonoid data.
pub fn twonoid_psi<T: Real>(t: &TwonoidData<T>, z: Complex<T>) -> Result<Mat2<T>> {
    t.psi(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rel_diff, unitarity_defect};
    use crate::ode::{ode_transport, Multiply, OdeSettings, PathSpec};
    use proptest::prelude::*;

    type C = Complex<f64>;

    fn c(x: f64, y: f64) -> C {
        Complex::new(x, y)
    }

    fn reduced(s: f64) -> TwonoidData<f64> {
        TwonoidData::new(C::zero(), c(s, 0.0), c(s, 0.0), C::zero()).unwrap()
    }

    fn residual(t: &TwonoidData<f64>, z: C) -> f64 {
        let h = 1e-5 * z.norm().min(1.0);
        let d = (t.psi(z + h).unwrap() - t.psi(z - h).unwrap()).scale_re(0.5 / h);
        let a = t.weierstrass().coefficient(z) * t.psi(z).unwrap();
        (d - a).max_abs() / a.max_abs().max(1.0)
    }

    #[test]
    fn lambda_example() {
        let t = reduced(0.3);
        assert!((t.lambda - c(0.4, 0.0)).norm() < 1e-15);
        let z = c(0.7, 0.2);
        assert!((t.psi(z).unwrap().det() - 1.0).norm() < 1e-10);
        assert!(residual(&t, z) < 1e-8);
        let m = t.monodromy().unwrap();
        assert!(unitarity_defect(&m) < 1e-10);
    }

    #[test]
    fn monodromy_matches_continuation() {
        let t = TwonoidData::new(c(0.2, 0.1), c(0.7, 0.0), c(0.4, 0.0), c(-0.3, 0.2)).unwrap();
        let base = c(0.6, 0.3);
        let path = PathSpec::circle(C::zero(), base, false, &[C::zero()]).unwrap();
        let wd = t.weierstrass();
        let start = t.psi(base).unwrap();
        let end = ode_transport(|z| wd.coefficient(z), &start, &path, Multiply::Left, &OdeSettings::default()).unwrap();
        let m = start.inverse().unwrap() * end;
        assert!(rel_diff(&m, &t.monodromy().unwrap()) < 1e-8);
    }

    #[test]
    fn unitary_iff_lambda_real() {
        let real = reduced(0.3);
        assert!(unitarity_defect(&real.monodromy().unwrap()) < 1e-10);
        // p₀q∞ − p∞q₀ = −0.5 gives λ = i/2
        let cplx = TwonoidData::new(C::zero(), c(0.5_f64.sqrt(), 0.0), c(0.5_f64.sqrt(), 0.0), C::zero()).unwrap();
        assert!((cplx.lambda - c(0.0, 0.5)).norm() < 1e-12);
        assert!(unitarity_defect(&cplx.monodromy().unwrap()) > 1e-1);
        assert!(residual(&cplx, c(0.7, 0.2)) < 1e-8);
    }

    #[test]
    fn errors() {
        assert!(matches!(TwonoidData::new(C::one(), C::one(), C::one(), C::one()), Err(Error::DegenerateData(_))));
        assert!(matches!(
            TwonoidData::new(C::zero(), c(0.5, 0.0), c(0.5, 0.0), C::zero()),
            Err(Error::DegenerateData(_))
        ));
        // w = 2 gives λ = 3/2
        assert!(matches!(
            TwonoidData::new(c(2.0, 0.0), C::zero(), C::zero(), C::one()),
            Err(Error::HalfIntegerLambda { .. })
        ));
        let a = Mat2::from_real(2.0, 1.0, 1.0, 1.0);
        let t = TwonoidData::with_frame(c(2.0, 0.0), C::zero(), C::zero(), C::one(), a).unwrap();
        assert!((t.monodromy().unwrap() - Mat2::identity()).max_abs() < 1e-10);
        assert!((t.psi(c(0.3, 0.3)).unwrap().det() - 1.0).norm() < 1e-10);
    }

    #[test]
    fn revolution_about_axis() {
        let t = reduced(0.3);
        let f0 = t.immersion(c(0.8, 0.0)).unwrap();
        for k in 1..12 {
            let z = C::from_polar(0.8, 0.5 * k as f64 - 3.0);
            let f = t.immersion(z).unwrap();
            assert!((f.mat().m11 - f0.mat().m11).norm() < 1e-10);
            assert!((f.mat().m12.norm() - f0.mat().m12.norm()).abs() < 1e-10);
        }
    }

    proptest! {
        #[test]
        fn residual_small(p0r in -1.0f64..1.0, p0i in -1.0f64..1.0, pi in -1.0f64..1.0, q0 in -1.0f64..1.0, qi in -1.0f64..1.0,
                          rad in 0.3f64..3.0, th in -3.0f64..3.0) {
            let Ok(t) = TwonoidData::new(c(p0r, p0i), c(pi, 0.0), c(q0, 0.0), c(qi, 0.0)) else { return Ok(()) };
            prop_assume!(t.pairing().norm() > 1e-2 && t.lambda.norm() > 1e-2);
            let z = C::from_polar(rad, th);
            prop_assert!((t.psi(z).unwrap().det() - 1.0).norm() < 1e-9);
            prop_assert!(residual(&t, z) < 1e-6);
        }
    }
}

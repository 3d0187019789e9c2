//! The Fuchsian system `Φ' = (A₀/z + A₁/(z−1)) Φ` with `A₀ = diag(α, −α)` and
//! `A₁ = [[β, γ], [δ, −β]]`: canonical solutions at 0, 1, ∞ in hypergeometric
//! form, their connection matrices and the monodromy representation.
//!
//! Branches: the solutions at 0 and ∞ take `arg z ∈ (0, 2π]`; the solution at 1
//! takes the principal `arg z`. Every factor `(z−1)^τ` uses `arg(z−1) ∈ (0, 2π]`.
//! With these choices the solution at 0 is single-valued on `ℂ ∖ [0, ∞)` and
//! its boundary values on the positive real axis are the limits from below.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rel_diff, Mat2};
use crate::ode::{ode_transport, Multiply, OdeSettings, PathSpec};
use crate::scalar::{dist_to_int, log_arg_0_2pi, pow_arg_0_2pi, pow_principal, Real};
use crate::specfun::{gamma_complex, hyp2f1_side, rgamma, sin_pi, CutSide, HypParams};

/// Parameters closer than this to an integer count as resonant.
pub const RESONANCE_TOL: f64 = 1e-9;
/// Threshold on `|γ|`, `|δ|` and the other denominators of the closed forms.
pub const DEGENERACY_TOL: f64 = 1e-12;
/// Agreement required between closed-form and transported monodromies.
pub const MONODROMY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Zero,
    One,
    Infinity,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::Zero, Branch::One, Branch::Infinity];

    pub fn label(self) -> &'static str {
        match self {
            Branch::Zero => "0",
            Branch::One => "1",
            Branch::Infinity => "inf",
        }
    }
}

/// Square root with nonnegative real part; purely imaginary roots get a nonnegative imaginary part.
pub fn principal_sqrt<T: Real>(x: Complex<T>) -> Complex<T> {
    let r = x.sqrt();
    if r.re < T::zero() || (r.re == T::zero() && r.im < T::zero()) {
        -r
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuchsianParams<T> {
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
    pub gamma: Complex<T>,
    pub delta: Complex<T>,
    pub tau: Complex<T>,
    pub rho: Complex<T>,
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
}

impl<T: Real> FuchsianParams<T> {
    pub fn new(alpha: Complex<T>, beta: Complex<T>, gamma: Complex<T>, delta: Complex<T>) -> Self {
        let tau = principal_sqrt(beta * beta + gamma * delta);
        let rho = principal_sqrt((alpha + beta) * (alpha + beta) + gamma * delta);
        Self { alpha, beta, gamma, delta, tau, rho, a: alpha + tau + rho, b: alpha + tau - rho, c: alpha + alpha }
    }

    pub fn real(alpha: T, beta: T, gamma: T, delta: T) -> Self {
        let r = |x| Complex::new(x, T::zero());
        Self::new(r(alpha), r(beta), r(gamma), r(delta))
    }

    /// `A₀/z + A₁/(z−1)`.
    pub fn coefficient(&self, z: Complex<T>) -> Mat2<T> {
        let u = z.inv();
        let v = (z - T::one()).inv();
        Mat2::new(self.alpha * u + self.beta * v, self.gamma * v, self.delta * v, -self.alpha * u - self.beta * v)
    }

    /// Fails unless `2α`, `2τ` and `2ρ` all stay away from the integers.
    pub fn check_generic(&self) -> Result<()> {
        let two = T::lit(2.0);
        for (name, x) in [("2 alpha", self.alpha * two), ("2 tau", self.tau * two), ("2 rho", self.rho * two)] {
            if dist_to_int(x) < T::lit(RESONANCE_TOL) {
                return Err(Error::ResonantParameters(format!("{name} = {x} is an integer")));
            }
        }
        Ok(())
    }

    fn check_denominators(&self) -> Result<()> {
        let tol = T::lit(DEGENERACY_TOL);
        let named = [
            ("gamma", self.gamma),
            ("delta", self.delta),
            ("beta + tau", self.beta + self.tau),
            ("a", self.a),
            ("a - c", self.a - self.c),
            ("c - b", self.c - self.b),
        ];
        for (name, x) in named {
            if x.norm() < tol {
                return Err(Error::DegenerateData(format!("{name} vanishes")));
            }
        }
        Ok(())
    }

    /// `det Φ⁽⁰⁾`, constant because `tr A = 0`.
    pub fn det_phi0(&self) -> Complex<T> {
        let four = T::lit(4.0);
        let e = (self.tau * Complex::new(T::zero(), T::TAU())).exp();
        -(self.alpha * self.alpha * four - T::one()) / (self.gamma * self.delta) * e
    }

    /// `e^{2πiΛ₀} = diag(e^{2πiα}, e^{−2πiα})`.
    pub fn local_monodromy_zero(&self) -> Mat2<T> {
        let e = (self.alpha * Complex::new(T::zero(), T::TAU())).exp();
        Mat2::diag(e, e.inv())
    }
}

/// `(±α, ±τ, ±ρ)`.
pub fn local_exponents<T: Real>(p: &FuchsianParams<T>) -> [(Complex<T>, Complex<T>); 3] {
    [(p.alpha, -p.alpha), (p.tau, -p.tau), (p.rho, -p.rho)]
}

fn check_point<T: Real>(z: Complex<T>) -> Result<()> {
    let tol = T::lit(1e-8);
    if z.norm() < tol || (z - T::one()).norm() < tol || !z.norm().is_finite() {
        return Err(Error::NotRepresentable(format!("z = {z} is at a singular point")));
    }
    Ok(())
}

/// Canonical solution normalized at the given singular point.
pub fn canonical_phi<T: Real>(p: &FuchsianParams<T>, branch: Branch, z: Complex<T>) -> Result<Mat2<T>> {
    p.check_generic()?;
    p.check_denominators()?;
    check_point(z)?;
    let FuchsianParams { alpha, beta, gamma, delta, tau, rho, a, b, c } = *p;
    let one = Complex::<T>::one();
    let two = T::lit(2.0);
    let zm1 = z - one;
    let zt = pow_arg_0_2pi(zm1, tau);
    let f = |aa, bb, cc, x, side| hyp2f1_side(&HypParams::new(aa, bb, cc), x, side);
    match branch {
        Branch::Zero => {
            let lz = log_arg_0_2pi(z);
            let zp = |e: Complex<T>| (e * lz).exp();
            let side = Some(CutSide::Below);
            Ok(Mat2::new(
                -(alpha * two + one) / delta * zp(alpha) * zt * f(a, b, c, z, side)?,
                zp(one - alpha) * zt * f(a - c + one, b - c + one, one * two - c, z, side)?,
                zp(one + alpha) * zt * f(a + one, b + one, c + two, z, side)?,
                (alpha * two - one) / gamma * zp(-alpha) * zt * f(a - c, b - c, -c, z, side)?,
            ))
        }
        Branch::One => {
            let w = one - z;
            let zi = zt.inv();
            let za = pow_principal(z, alpha);
            let zai = za.inv();
            let s = a + b - c + one;
            let s2 = c - a - b + one;
            let side = Some(CutSide::Below);
            Ok(Mat2::new(
                (beta + tau) / delta * za * zt * f(a, b, s, w, side)?,
                za * zi * f(c - a, c - b, s2, w, side)?,
                zai * zt * f(a - c, b - c, s, w, side)?,
                -(beta + tau) / gamma * zai * zi * f(-a, -b, s2, w, side)?,
            ))
        }
        Branch::Infinity => {
            let u = z.inv();
            let lz = log_arg_0_2pi(z);
            let z1 = ((-tau - rho) * lz).exp() * zt;
            let z2 = ((rho - tau) * lz).exp() * zt;
            let s1 = a - b + one;
            let s2 = b - a + one;
            let side = Some(CutSide::Above);
            Ok(Mat2::new(
                gamma * (c - a) / (a * (beta + tau)) * z1 * f(a, a - c + one, s1, u, side)?,
                z2 * f(b, b - c + one, s2, u, side)?,
                z1 * f(a + one, a - c, s1, u, side)?,
                b * (beta + tau) / (gamma * (c - b)) * z2 * f(b + one, b - c, s2, u, side)?,
            ))
        }
    }
}

/// Product of Γ at `num` over Γ at `den`; a numerator pole is an error, a denominator pole gives zero.
fn gamma_ratio<T: Real>(num: &[Complex<T>], den: &[Complex<T>]) -> Result<Complex<T>> {
    let mut out = Complex::<T>::one();
    for x in num {
        out = out * gamma_complex(*x).map_err(|_| Error::ResonantParameters(format!("Gamma pole at {x}")))?;
    }
    for x in den {
        out = out * rgamma(*x);
    }
    Ok(out)
}

fn i_pi<T: Real>(x: Complex<T>) -> Complex<T> {
    (x * Complex::new(T::zero(), T::PI())).exp()
}

/// `(E₁, E_∞)` with `Φ⁽⁰⁾ = Φ⁽¹⁾E₁ = Φ⁽∞⁾E_∞` in the upper half-plane.
pub fn connection_matrices<T: Real>(p: &FuchsianParams<T>) -> Result<(Mat2<T>, Mat2<T>)> {
    p.check_generic()?;
    p.check_denominators()?;
    let FuchsianParams { alpha, beta, gamma, delta, tau, a, b, c, .. } = *p;
    let one = Complex::<T>::one();
    let two = T::lit(2.0);
    let ap = alpha * two + one;
    let am = alpha * two - one;
    let bt = beta + tau;
    let e = i_pi(tau * two);
    let e1 = Mat2::new(
        -ap / bt * gamma_ratio(&[c, c - a - b], &[c - a, c - b])?,
        am / gamma * gamma_ratio(&[-c, c - a - b], &[-a, -b])?,
        -ap / delta * gamma_ratio(&[c, a + b - c], &[a, b])? * e,
        -am / bt * gamma_ratio(&[-c, a + b - c], &[a - c, b - c])? * e,
    );
    let k = a * bt / (gamma * (a - c));
    let einf = Mat2::new(
        ap / delta * k * gamma_ratio(&[c, b - a], &[b, c - a])? * i_pi(a),
        k * gamma_ratio(&[one * two - c, b - a], &[b - c + one, one - a])? * i_pi(a - c),
        -ap / delta * gamma_ratio(&[c, a - b], &[a, c - b])? * i_pi(b),
        -gamma_ratio(&[one * two - c, a - b], &[a - c + one, one - b])? * i_pi(b - c),
    );
    Ok((e1, einf))
}

/// Connection matrix valid at `z`: `Φ⁽⁰⁾(z) = Φ⁽branch⁾(z) · E`.
///
/// Below the real axis (and on it) the solution at 0 has gone once more
/// around the origin relative to the solution at 1, so `E₁` picks up `e^{2πiΛ₀}`.
pub fn connection_at<T: Real>(
    p: &FuchsianParams<T>,
    e1: &Mat2<T>,
    einf: &Mat2<T>,
    branch: Branch,
    z: Complex<T>,
) -> Mat2<T> {
    match branch {
        Branch::Zero => Mat2::identity(),
        Branch::One if z.im > T::zero() => *e1,
        Branch::One => *e1 * p.local_monodromy_zero(),
        Branch::Infinity => *einf,
    }
}

/// Closed-form monodromy of `Φ⁽⁰⁾` around `z = 1`.
pub fn monodromy_one<T: Real>(p: &FuchsianParams<T>) -> Result<Mat2<T>> {
    p.check_generic()?;
    p.check_denominators()?;
    let FuchsianParams { alpha, gamma, delta, tau, a, b, c, .. } = *p;
    let one = Complex::<T>::one();
    let two = T::lit(2.0);
    let i = Complex::new(T::zero(), T::one());
    let two_pi_i = Complex::new(T::zero(), T::TAU());
    let e = i_pi(tau * two);
    let sc = sin_pi(c);
    let ap = alpha * two + one;
    let am = alpha * two - one;
    let g_mc = gamma_ratio(&[-c, -c], &[-a, -b, a - c, b - c])?;
    let g_c = gamma_ratio(&[c, c], &[a, b, c - a, c - b])?;
    Ok(Mat2::new(
        e - i * two * sin_pi(a) * sin_pi(b) / sc,
        two_pi_i / gamma * am / ap * g_mc,
        two_pi_i / delta * ap / am * g_c,
        e + i * two * sin_pi(c - a) * sin_pi(c - b) / sc,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyBundle<T> {
    pub e1: Mat2<T>,
    pub einf: Mat2<T>,
    pub m0: Mat2<T>,
    pub m1: Mat2<T>,
    pub minf: Mat2<T>,
    /// Point the loops start from.
    pub basepoint: Complex<T>,
    /// Relative deviation of each transported monodromy from the closed form (0, 1, ∞).
    pub transport_defect: [T; 3],
}

impl<T: Real> MonodromyBundle<T> {
    /// `‖𝓜_∞ 𝓜₁ 𝓜₀ − I‖_max`
    pub fn cyclic_defect(&self) -> T {
        (self.minf * self.m1 * self.m0 - Mat2::identity()).max_abs()
    }
}

/// Loops around 0, 1 and ∞ based at `base` in the upper half-plane. The loop
/// around ∞ runs clockwise around a circle enclosing both finite punctures.
pub fn standard_loops<T: Real>(base: Complex<T>) -> Result<[PathSpec<T>; 3]> {
    let sing = [Complex::<T>::zero(), Complex::<T>::one()];
    let half = T::lit(0.5);
    let l0 = PathSpec::circle(Complex::zero(), base, false, &sing)?;
    let l1 = PathSpec::circle(Complex::one(), base, false, &sing)?;
    let top = Complex::new(half, T::lit(2.0));
    let out = PathSpec::through(&[base, Complex::new(half, T::one()), top], &sing)?;
    let around = PathSpec::circle(Complex::new(half, T::zero()), top, true, &sing)?;
    let back = PathSpec::through(&[top, Complex::new(half, T::one()), base], &sing)?;
    let linf = out.then(&around)?.then(&back)?;
    Ok([l0, l1, linf])
}

pub const BASEPOINT: (f64, f64) = (0.5, 0.4);

/// Closed-form connection and monodromy matrices, each monodromy checked
/// against numerical continuation of `Φ⁽⁰⁾` along the standard loops.
pub fn monodromy_bundle<T: Real>(p: &FuchsianParams<T>) -> Result<MonodromyBundle<T>> {
    let (e1, einf) = connection_matrices(p)?;
    let m0 = p.local_monodromy_zero();
    let m1 = monodromy_one(p)?;
    let minf = m0.inverse()? * m1.inverse()?;
    let base = Complex::new(T::lit(BASEPOINT.0), T::lit(BASEPOINT.1));
    let phi = canonical_phi(p, Branch::Zero, base)?;
    let phi_inv = phi.inverse()?;
    let settings = OdeSettings::default();
    let loops = standard_loops(base)?;
    let closed = [m0, m1, minf];
    let mut transport_defect = [T::zero(); 3];
    for (k, path) in loops.iter().enumerate() {
        let end = ode_transport(|z| p.coefficient(z), &phi, path, Multiply::Left, &settings)?;
        let m = phi_inv * end;
        let d = rel_diff(&m, &closed[k]);
        transport_defect[k] = d;
        if !(d <= T::lit(MONODROMY_TOL)) {
            return Err(Error::OracleMismatch {
                what: format!("monodromy around {}", Branch::ALL[k].label()),
                defect: d.as_f64(),
            });
        }
    }
    Ok(MonodromyBundle { e1, einf, m0, m1, minf, basepoint: base, transport_defect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use proptest::prelude::*;

    type C = Complex<f64>;

    fn sample() -> FuchsianParams<f64> {
        FuchsianParams::real(0.23, 0.11, 1.0, 0.7)
    }

    fn residual(p: &FuchsianParams<f64>, branch: Branch, z: C) -> f64 {
        let h = 1e-6;
        let d = (canonical_phi(p, branch, z + h).unwrap() - canonical_phi(p, branch, z - h).unwrap()).scale_re(0.5 / h);
        let phi = canonical_phi(p, branch, z).unwrap();
        (d - p.coefficient(z) * phi).max_abs() / phi.max_abs()
    }

    #[test]
    fn exponents() {
        let p = FuchsianParams::real(0.0, 0.3, 0.4, 0.4);
        assert!((p.tau - 0.5).norm() < 1e-15);
        let p = FuchsianParams::real(0.2, 0.3, 0.11, 1.0);
        assert!((p.rho - 0.6).norm() < 1e-15);
        let ex = local_exponents(&p);
        assert_eq!(ex[2].1, -p.rho);
        let p = FuchsianParams::real(0.2, 0.3, -0.09, 1.0);
        assert!(p.tau.norm() < 1e-8);
        assert!(matches!(p.check_generic(), Err(Error::ResonantParameters(_))));
        let p = FuchsianParams::real(0.2, 0.0, -1.0, 1.0);
        assert!((p.tau - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn canonical_solutions_solve_system() {
        let p = sample();
        assert!(residual(&p, Branch::Zero, c(0.3, 0.2)) < 1e-6);
        for z in [c(0.3, -0.2), c(-0.3, 0.1), c(0.4, 0.0)] {
            assert!(residual(&p, Branch::Zero, z) < 1e-6, "{z}");
        }
        for z in [c(0.8, 0.2), c(0.8, -0.2), c(1.3, 0.1), c(1.3, -0.1), c(1.4, 0.0), c(0.6, 0.0)] {
            assert!(residual(&p, Branch::One, z) < 1e-6, "{z}");
        }
        for z in [c(0.8, 2.2), c(0.8, -2.2), c(-2.0, 0.1), c(-2.0, -0.1), c(2.5, 0.0)] {
            assert!(residual(&p, Branch::Infinity, z) < 1e-6, "{z}");
        }
    }

    #[test]
    fn leading_behaviour_at_zero() {
        let p = sample();
        let z = c(1e-6, 0.0);
        let phi = canonical_phi(&p, Branch::Zero, z).unwrap();
        let za = pow_arg_0_2pi(z, p.alpha);
        let lead = phi.m11 / za;
        let expect = -(2.0 * p.alpha + 1.0) / p.delta * i_pi(p.tau);
        assert!((lead - expect).norm() < 1e-5, "{lead} vs {expect}");
    }

    #[test]
    fn transport_matches_closed_form() {
        let p = sample();
        let s = OdeSettings::default();
        let start = canonical_phi(&p, Branch::Zero, c(0.2, 0.0)).unwrap();
        let path = PathSpec::through(&[c(0.2, 0.0), c(0.5, 0.0)], &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let end = ode_transport(|z| p.coefficient(z), &start, &path, Multiply::Left, &s).unwrap();
        let direct = canonical_phi(&p, Branch::Zero, c(0.5, 0.0)).unwrap();
        assert!(rel_diff(&end, &direct) < 1e-8);

        // value on the upper side of the positive axis
        let start = canonical_phi(&p, Branch::Zero, c(0.3, 0.0)).unwrap() * p.local_monodromy_zero().inverse().unwrap();
        let path = PathSpec::through(&[c(0.3, 0.0), c(0.3, 0.5), c(0.0, 3.0)], &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let end = ode_transport(|z| p.coefficient(z), &start, &path, Multiply::Left, &s).unwrap();
        let (_, einf) = connection_matrices(&p).unwrap();
        let inf = canonical_phi(&p, Branch::Infinity, c(0.0, 3.0)).unwrap() * einf;
        assert!(rel_diff(&end, &inf) < 1e-8);
    }

    #[test]
    fn connection_identities() {
        let p = sample();
        let (e1, einf) = connection_matrices(&p).unwrap();
        for z in [c(0.5, 0.3), c(0.5, -0.3), c(1.5, 0.3), c(-0.5, 0.3), c(-0.5, -0.3), c(0.5, 0.0), c(1.2, 0.0)] {
            let phi0 = canonical_phi(&p, Branch::Zero, z).unwrap();
            let via1 = canonical_phi(&p, Branch::One, z).unwrap() * connection_at(&p, &e1, &einf, Branch::One, z);
            let viainf = canonical_phi(&p, Branch::Infinity, z).unwrap() * einf;
            assert!(rel_diff(&phi0, &via1) < 1e-8, "{z}");
            assert!(rel_diff(&phi0, &viainf) < 1e-8, "{z}");
        }
        assert_eq!(connection_at(&p, &e1, &einf, Branch::Zero, c(0.1, 0.1)), Mat2::identity());
    }

    #[test]
    fn determinant_closed_form() {
        let p = sample();
        for z in [c(0.3, 0.2), c(-2.0, -1.0), c(0.5, -0.3)] {
            let d = canonical_phi(&p, Branch::Zero, z).unwrap().det();
            assert!((d - p.det_phi0()).norm() < 1e-10 * d.norm());
        }
    }

    #[test]
    fn bundle_example() {
        let p = sample();
        let m = monodromy_bundle(&p).unwrap();
        assert!((m.m1.det() - 1.0).norm() < 1e-9);
        assert!(m.cyclic_defect() < 1e-8);
        let tr = 2.0 * (std::f64::consts::TAU * p.tau).cos();
        assert!((m.m1.trace() - tr).norm() < 1e-8);
        assert!(m.transport_defect.iter().all(|d| *d < 1e-6));
        // m1 agrees with E₁⁻¹ e^{2πiΛ₁} E₁
        let l1 = Mat2::diag(i_pi(2.0 * p.tau), i_pi(-2.0 * p.tau));
        let conj = m.e1.inverse().unwrap() * l1 * m.e1;
        assert!(rel_diff(&conj, &m.m1) < 1e-10);
    }

    #[test]
    fn loop_around_zero_by_transport() {
        let p = sample();
        let z0 = c(0.2, 0.0);
        let start = canonical_phi(&p, Branch::Zero, z0).unwrap();
        let path = PathSpec::circle(c(0.0, 0.0), z0, false, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let end = ode_transport(|z| p.coefficient(z), &start, &path, Multiply::Left, &OdeSettings::default()).unwrap();
        let expect = start * p.local_monodromy_zero();
        assert!((end - expect).max_abs() < 1e-7 * start.max_abs());
    }

    #[test]
    fn degenerate_inputs() {
        let p = FuchsianParams::real(0.23, 0.11, 0.0, 0.7);
        assert!(matches!(canonical_phi(&p, Branch::Zero, c(0.3, 0.1)), Err(Error::DegenerateData(_))));
        let p = FuchsianParams::real(0.5, 0.11, 1.0, 0.7);
        assert!(matches!(connection_matrices(&p), Err(Error::ResonantParameters(_))));
        assert!(canonical_phi(&sample(), Branch::Zero, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn single_precision_phi() {
        let p = FuchsianParams::<f32>::real(0.23, 0.11, 1.0, 0.7);
        let z = c::<f32>(0.3, 0.2);
        let phi = canonical_phi(&p, Branch::Zero, z).unwrap();
        let d = phi.det();
        assert!((d - p.det_phi0()).norm() < 1e-4);
    }

    fn params() -> impl Strategy<Value = FuchsianParams<f64>> {
        (-0.4f64..0.4, -0.4f64..0.4, 0.2f64..2.0, 0.2f64..2.0)
            .prop_map(|(a, b, g, d)| FuchsianParams::real(a, b, g, d))
            .prop_filter("generic", |p| {
                p.check_generic().is_ok()
                    && dist_to_int(p.alpha * 2.0) > 1e-2
                    && dist_to_int(p.tau * 2.0) > 1e-2
                    && dist_to_int(p.rho * 2.0) > 1e-2
                    && dist_to_int(p.a) > 1e-2
                    && dist_to_int(p.b) > 1e-2
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn bundle_invariants(p in params(), re in -2.0f64..3.0, im in -2.0f64..2.0) {
            let m = monodromy_bundle(&p).unwrap();
            prop_assert!(m.cyclic_defect() <= 1e-8);
            let tr = 2.0 * (std::f64::consts::TAU * p.tau).cos();
            prop_assert!((m.m1.trace() - tr).norm() <= 1e-8);
            for mm in [m.m0, m.m1, m.minf] {
                prop_assert!((mm.det() - 1.0).norm() <= 1e-9);
            }
            let z = c(re, im);
            prop_assume!(z.norm() > 0.1 && (z - 1.0).norm() > 0.1 && im.abs() > 0.05);
            let d = canonical_phi(&p, Branch::Zero, z).unwrap().det();
            prop_assert!((d - p.det_phi0()).norm() <= 1e-8 * d.norm());
        }

        #[test]
        fn residuals_at_random_points(p in params(), r in 0.2f64..0.7, th in 0.1f64..3.0, flip in any::<bool>()) {
            let s = if flip { -1.0 } else { 1.0 };
            let z = C::from_polar(r, s * th);
            prop_assert!(residual(&p, Branch::Zero, z) <= 1e-6);
            prop_assert!(residual(&p, Branch::One, 1.0 - z) <= 1e-6);
            prop_assert!(residual(&p, Branch::Infinity, z.inv()) <= 1e-6);
        }

        #[test]
        fn loop_composition_returns_frame(p in params()) {
            let base = c(BASEPOINT.0, BASEPOINT.1);
            let loops = standard_loops(base).unwrap();
            let whole = loops[0].clone().then(&loops[1]).unwrap().then(&loops[2]).unwrap();
            let start = canonical_phi(&p, Branch::Zero, base).unwrap();
            let end = ode_transport(|z| p.coefficient(z), &start, &whole, Multiply::Left, &OdeSettings::default()).unwrap();
            prop_assert!(rel_diff(&end, &start) <= 1e-6);
        }

        #[test]
        fn transported_eigenvalues_at_zero(p in params()) {
            let base = c(0.3, 0.1);
            let start = canonical_phi(&p, Branch::Zero, base).unwrap();
            let path = PathSpec::circle(c(0.0, 0.0), base, false, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
            let end = ode_transport(|z| p.coefficient(z), &start, &path, Multiply::Left, &OdeSettings::default()).unwrap();
            let m = start.inverse().unwrap() * end;
            let tr = m.trace();
            let disc = (tr * tr - 4.0).sqrt();
            let (l1, l2) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
            let e = i_pi(2.0 * p.alpha);
            let ok = ((l1 - e).norm() < 1e-7 && (l2 - e.inv()).norm() < 1e-7) || ((l2 - e).norm() < 1e-7 && (l1 - e.inv()).norm() < 1e-7);
            prop_assert!(ok, "{} {} vs {}", l1, l2, e);
        }
    }
}

//! Gauss hypergeometric function ₂F₁(a, b; c; z) on the plane cut along [1, ∞).

use num_complex::Complex;
use num_traits::{One, Zero};

use super::gamma::{gamma_complex, rgamma};
use crate::error::{Error, Result};
use crate::ode::{integrate_path, OdeSettings, PathSpec};
use crate::scalar::{dist_to_int, dist_to_nonpos_int, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
}

impl<T: Real> HypParams<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>) -> Self {
        Self { a, b, c }
    }

    pub fn real(a: T, b: T, c: T) -> Self {
        Self::new(Complex::new(a, T::zero()), Complex::new(b, T::zero()), Complex::new(c, T::zero()))
    }

    pub fn shifted(&self, da: i32, db: i32, dc: i32) -> Self {
        let f = |k: i32| T::from_i32(k).unwrap();
        Self::new(self.a + f(da), self.b + f(db), self.c + f(dc))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    DirectZ,
    OneMinusZ,
    ReciprocalZ,
    OdeFallback,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPlan<T> {
    pub representation: Representation,
    /// Argument handed to the series: `z`, `1 − z` or `1/z` (and `z` for the fallback).
    pub argument: Complex<T>,
}

/// Which limit to take for arguments on the cut `[1, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSide {
    /// `z + i0`
    Above,
    /// `z − i0`
    Below,
}

/// Tolerances used by the hypergeometric evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalSettings {
    pub series_radius: f64,
    pub term_rel_tol: f64,
    pub small_terms: usize,
    pub max_terms: usize,
    pub degenerate_c_tol: f64,
    pub resonance_tol: f64,
    /// Imaginary parts below this count as lying on the real axis.
    pub cut_tol: f64,
    pub ode: OdeSettings,
}

impl Default for EvalSettings {
    fn default() -> Self {
        Self {
            series_radius: 0.8,
            term_rel_tol: 1e-17,
            small_terms: 3,
            max_terms: 10_000,
            degenerate_c_tol: 1e-9,
            resonance_tol: 1e-9,
            cut_tol: 1e-12,
            ode: OdeSettings { rtol: 1e-12, atol: 1e-15, ..OdeSettings::default() },
        }
    }
}

fn check_c<T: Real>(c: Complex<T>, s: &EvalSettings) -> Result<()> {
    if dist_to_nonpos_int(c) < T::lit(s.degenerate_c_tol) {
        return Err(Error::DegenerateC { re: c.re.as_f64(), im: c.im.as_f64() });
    }
    Ok(())
}

/// Power series of ₂F₁ about the origin.
pub fn hyp2f1_series<T: Real>(p: &HypParams<T>, z: Complex<T>) -> Result<Complex<T>> {
    hyp2f1_series_with(p, z, &EvalSettings::default())
}

pub fn hyp2f1_series_with<T: Real>(p: &HypParams<T>, z: Complex<T>, s: &EvalSettings) -> Result<Complex<T>> {
    check_c(p.c, s)?;
    if z.norm() > T::lit(s.series_radius) * (T::one() + T::lit(1e-12)) {
        return Err(Error::NotRepresentable(format!(
            "|z| = {} exceeds the series radius {}",
            z.norm(),
            s.series_radius
        )));
    }
    if z.is_zero() {
        return Ok(Complex::<T>::one());
    }
    let tol = T::lit(s.term_rel_tol).max(T::epsilon() * T::lit(0.1));
    let mut term = Complex::<T>::one();
    let mut sum = Complex::<T>::one();
    let mut small = 0;
    for n in 0..s.max_terms {
        let nf = T::from_usize(n).unwrap();
        term = term * (p.a + nf) * (p.b + nf) / ((p.c + nf) * (nf + T::one())) * z;
        sum = sum + term;
        if term.norm() <= tol * sum.norm() {
            small += 1;
            if small >= s.small_terms {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::SeriesDiverged { terms: s.max_terms })
}

/// Chooses the representation with the smallest series argument.
pub fn plan<T: Real>(z: Complex<T>, s: &EvalSettings) -> EvalPlan<T> {
    let d_direct = z.norm();
    let d_one = (Complex::<T>::one() - z).norm();
    let d_recip = if z.is_zero() { T::infinity() } else { z.norm().recip() };
    let (representation, argument, d) = if d_direct <= d_one && d_direct <= d_recip {
        (Representation::DirectZ, z, d_direct)
    } else if d_one <= d_recip {
        (Representation::OneMinusZ, Complex::<T>::one() - z, d_one)
    } else {
        (Representation::ReciprocalZ, z.inv(), d_recip)
    };
    if d > T::lit(s.series_radius) {
        EvalPlan { representation: Representation::OdeFallback, argument: z }
    } else {
        EvalPlan { representation, argument }
    }
}

fn on_cut<T: Real>(z: Complex<T>, s: &EvalSettings) -> bool {
    z.re > T::one() && z.im.abs() <= T::lit(s.cut_tol)
}

/// `log(w)` for `w` that equals `1 − z` or `−z`, negative real exactly when `z` is on the cut.
fn log_across_cut<T: Real>(w: Complex<T>, z: Complex<T>, side: Option<CutSide>, s: &EvalSettings) -> Result<Complex<T>> {
    if on_cut(z, s) {
        let arg = match side {
            Some(CutSide::Above) => -T::PI(),
            Some(CutSide::Below) => T::PI(),
            None => return Err(Error::OnBranchCut),
        };
        return Ok(Complex::new(w.norm().ln(), arg));
    }
    Ok(w.ln())
}

fn gamma_ratio<T: Real>(num: &[Complex<T>], den: &[Complex<T>]) -> Result<Complex<T>> {
    let mut out = Complex::<T>::one();
    for x in num {
        out = out * gamma_complex(*x)?;
    }
    for x in den {
        out = out * rgamma(*x);
    }
    Ok(out)
}

fn resonant<T: Real>(x: Complex<T>, s: &EvalSettings) -> bool {
    dist_to_int(x) < T::lit(s.resonance_tol)
}

fn eval_one_minus_z<T: Real>(p: &HypParams<T>, z: Complex<T>, side: Option<CutSide>, s: &EvalSettings) -> Result<Complex<T>> {
    let HypParams { a, b, c } = *p;
    let e = c - a - b;
    if resonant(e, s) {
        return Err(Error::ResonantParameters(format!("c - a - b = {e} is an integer")));
    }
    check_c(c, s)?;
    let w = Complex::<T>::one() - z;
    let t1 = gamma_ratio(&[c, e], &[c - a, c - b])?;
    let t2 = gamma_ratio(&[c, -e], &[a, b])?;
    let f1 = hyp2f1_series_with(&HypParams::new(a, b, Complex::<T>::one() - e), w, s)?;
    if w.is_zero() {
        if e.re > T::zero() {
            return Ok(t1 * f1);
        }
        return Err(Error::NotRepresentable("series diverges at z = 1 when Re(c - a - b) <= 0".into()));
    }
    let f2 = hyp2f1_series_with(&HypParams::new(c - a, c - b, Complex::<T>::one() + e), w, s)?;
    let pw = (e * log_across_cut(w, z, side, s)?).exp();
    Ok(t1 * f1 + pw * t2 * f2)
}

fn eval_reciprocal_z<T: Real>(p: &HypParams<T>, z: Complex<T>, side: Option<CutSide>, s: &EvalSettings) -> Result<Complex<T>> {
    let HypParams { a, b, c } = *p;
    if resonant(a - b, s) {
        return Err(Error::ResonantParameters(format!("a - b = {} is an integer", a - b)));
    }
    check_c(c, s)?;
    let u = z.inv();
    let one = Complex::<T>::one();
    let ln_neg = log_across_cut(-z, z, side, s)?;
    let t1 = gamma_ratio(&[c, b - a], &[b, c - a])?;
    let t2 = gamma_ratio(&[c, a - b], &[a, c - b])?;
    let f1 = hyp2f1_series_with(&HypParams::new(a, a - c + one, a - b + one), u, s)?;
    let f2 = hyp2f1_series_with(&HypParams::new(b, b - c + one, b - a + one), u, s)?;
    Ok(t1 * (-a * ln_neg).exp() * f1 + t2 * (-b * ln_neg).exp() * f2)
}

/// Integrates the hypergeometric equation for `[w, w']` from a point of
/// modulus ½ on the imaginary axis to `z`, staying in the half-plane that
/// selects the requested side of the cut.
fn eval_ode<T: Real>(p: &HypParams<T>, z: Complex<T>, side: Option<CutSide>, s: &EvalSettings) -> Result<[Complex<T>; 2]> {
    let HypParams { a, b, c } = *p;
    check_c(c, s)?;
    if on_cut(z, s) && side.is_none() {
        return Err(Error::OnBranchCut);
    }
    let half = T::lit(0.5);
    let sign = if z.im > T::lit(s.cut_tol) {
        T::one()
    } else if z.im < -T::lit(s.cut_tol) {
        -T::one()
    } else {
        match side {
            Some(CutSide::Below) => -T::one(),
            _ => T::one(),
        }
    };
    let start = Complex::new(T::zero(), half * sign);
    let w0 = hyp2f1_series_with(p, start, s)?;
    let dw0 = a * b / c * hyp2f1_series_with(&p.shifted(1, 1, 1), start, s)?;
    let mut pts = vec![start];
    if z.im.abs() < half {
        pts.push(Complex::new(z.re, half * sign));
    }
    pts.push(z);
    let path = PathSpec::through(&pts, &[Complex::<T>::zero(), Complex::<T>::one()])?;
    let rhs = |x: Complex<T>, y: &[Complex<T>; 2]| {
        let d2 = (a * b * y[0] - (c - (a + b + T::one()) * x) * y[1]) / (x * (Complex::<T>::one() - x));
        [y[1], d2]
    };
    integrate_path(rhs, [w0, dw0], &path, &s.ode)
}

/// ₂F₁ evaluated with the planner's choice of representation.
pub fn hyp2f1<T: Real>(p: &HypParams<T>, z: Complex<T>) -> Result<Complex<T>> {
    hyp2f1_side(p, z, None)
}

/// As [`hyp2f1`], taking the limit from `side` when `z` lies on `[1, ∞)`.
pub fn hyp2f1_side<T: Real>(p: &HypParams<T>, z: Complex<T>, side: Option<CutSide>) -> Result<Complex<T>> {
    hyp2f1_with(p, z, side, &EvalSettings::default())
}

pub fn hyp2f1_with<T: Real>(p: &HypParams<T>, z: Complex<T>, side: Option<CutSide>, s: &EvalSettings) -> Result<Complex<T>> {
    let pl = plan(z, s);
    match hyp2f1_planned(p, z, side, pl.representation, s) {
        // Resonant transformations fall back to integrating the equation.
        Err(Error::ResonantParameters(msg)) if pl.representation != Representation::OdeFallback => {
            if (z - Complex::<T>::one()).norm() < T::lit(crate::ode::MIN_CLEARANCE) {
                return Err(Error::ResonantParameters(msg));
            }
            hyp2f1_planned(p, z, side, Representation::OdeFallback, s)
        }
        r => r,
    }
}

/// Evaluates with a forced representation; no fallback on resonance.
pub fn hyp2f1_planned<T: Real>(
    p: &HypParams<T>,
    z: Complex<T>,
    side: Option<CutSide>,
    repr: Representation,
    s: &EvalSettings,
) -> Result<Complex<T>> {
    match repr {
        Representation::DirectZ => hyp2f1_series_with(p, z, s),
        Representation::OneMinusZ => eval_one_minus_z(p, z, side, s),
        Representation::ReciprocalZ => eval_reciprocal_z(p, z, side, s),
        Representation::OdeFallback => eval_ode(p, z, side, s).map(|y| y[0]),
    }
}

/// n-th derivative via `dⁿ/dzⁿ F = (a)ₙ(b)ₙ/(c)ₙ · F(a+n, b+n; c+n; z)`.
pub fn hyp2f1_derivative<T: Real>(p: &HypParams<T>, z: Complex<T>, n: u32) -> Result<Complex<T>> {
    hyp2f1_derivative_side(p, z, n, None)
}

pub fn hyp2f1_derivative_side<T: Real>(p: &HypParams<T>, z: Complex<T>, n: u32, side: Option<CutSide>) -> Result<Complex<T>> {
    let s = EvalSettings::default();
    let mut coef = Complex::<T>::one();
    for k in 0..n {
        let kf = T::from_u32(k).unwrap();
        check_c(p.c + kf, &s)?;
        coef = coef * (p.a + kf) * (p.b + kf) / (p.c + kf);
    }
    if coef.is_zero() {
        return Ok(coef);
    }
    let k = n as i32;
    Ok(coef * hyp2f1_with(&p.shifted(k, k, k), z, side, &s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use proptest::prelude::*;
    use std::f64::consts::{LN_2, PI};

    type C = Complex<f64>;

    /// Compensated 200-term summation in double-double arithmetic.
    fn dd_series(a: f64, b: f64, cc: f64, z: f64) -> f64 {
        fn two_sum(a: f64, b: f64) -> (f64, f64) {
            let s = a + b;
            let v = s - a;
            (s, (a - (s - v)) + (b - v))
        }
        fn two_prod(a: f64, b: f64) -> (f64, f64) {
            let p = a * b;
            (p, a.mul_add(b, -p))
        }
        fn mul(x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
            let (p, e) = two_prod(x.0, y.0);
            let e = e + x.0 * y.1 + x.1 * y.0;
            two_sum(p, e)
        }
        fn div(x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
            let q = x.0 / y.0;
            let r = (x.0, x.1);
            let qy = mul((q, 0.0), y);
            let rem = add(r, (-qy.0, -qy.1));
            let q2 = rem.0 / y.0;
            two_sum(q, q2)
        }
        fn add(x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
            let (s, e) = two_sum(x.0, y.0);
            two_sum(s, e + x.1 + y.1)
        }
        let mut term = (1.0, 0.0);
        let mut sum = (1.0, 0.0);
        for n in 0..200 {
            let nf = n as f64;
            let num = mul(mul((a + nf, 0.0), (b + nf, 0.0)), (z, 0.0));
            let den = mul((cc + nf, 0.0), (nf + 1.0, 0.0));
            term = mul(term, div(num, den));
            sum = add(sum, term);
        }
        sum.0 + sum.1
    }

    #[test]
    fn series_examples() {
        let p = HypParams::real(0.3, 0.7, 1.1);
        assert_eq!(hyp2f1_series(&p, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        let v = hyp2f1_series(&HypParams::real(1.0, 1.0, 2.0), c(0.5, 0.0)).unwrap();
        assert!((v.re - 2.0 * LN_2).abs() < 1e-14);
        let v = hyp2f1_series(&p, c(0.4, 0.0)).unwrap();
        let o = dd_series(0.3, 0.7, 1.1, 0.4);
        assert!((v.re - o).abs() / o < 1e-13);
        assert!(v.im == 0.0);
    }

    #[test]
    fn series_errors() {
        let p = HypParams::real(0.3, 0.7, -2.0);
        assert!(matches!(hyp2f1_series(&p, c(0.1, 0.0)), Err(Error::DegenerateC { .. })));
        let s = EvalSettings { max_terms: 5, ..Default::default() };
        let p = HypParams::real(0.3, 0.7, 1.1);
        assert!(matches!(hyp2f1_series_with(&p, c(0.7, 0.0), &s), Err(Error::SeriesDiverged { terms: 5 })));
        assert!(hyp2f1_series(&p, c(0.9, 0.0)).is_err());
    }

    #[test]
    fn planner_choices() {
        let s = EvalSettings::default();
        assert_eq!(plan(c::<f64>(0.3, 0.1), &s).representation, Representation::DirectZ);
        assert_eq!(plan(c::<f64>(0.9, 0.1), &s).representation, Representation::OneMinusZ);
        assert_eq!(plan(c::<f64>(-5.0, 0.0), &s).representation, Representation::ReciprocalZ);
        assert_eq!(plan(c::<f64>(0.5, 0.866), &s).representation, Representation::OdeFallback);
        // tie |z| = |1 - z| resolves to the direct series
        assert_eq!(plan(c::<f64>(0.5, 0.3), &s).representation, Representation::DirectZ);
        // tie |1 - z| = |1/z| resolves to one-minus-z
        let pl = plan(c::<f64>(1.5, 0.0), &s);
        assert_eq!(pl.representation, Representation::OneMinusZ);
    }

    #[test]
    fn gauss_summation_at_one() {
        let v = hyp2f1(&HypParams::real(0.5, 0.5, 1.5), c(1.0, 0.0)).unwrap();
        assert!((v - PI / 2.0).norm() < 1e-12);
    }

    #[test]
    fn closed_form_log() {
        // ₂F₁(1,1;2;z) = −ln(1−z)/z, resonant in every transformation
        let p = HypParams::real(1.0, 1.0, 2.0);
        let v = hyp2f1_side(&p, c(2.0, 0.0), Some(CutSide::Above)).unwrap();
        assert!((v - c(0.0, PI / 2.0)).norm() < 1e-9, "{v}");
        let v = hyp2f1_side(&p, c(2.0, 0.0), Some(CutSide::Below)).unwrap();
        assert!((v - c(0.0, -PI / 2.0)).norm() < 1e-9, "{v}");
        assert!(matches!(hyp2f1(&p, c(2.0, 0.0)), Err(Error::OnBranchCut)));
        for z in [c(-3.0, 1.0), c(0.5, 0.85), c(1.6, -0.7), c(4.0, 2.0)] {
            let v = hyp2f1(&p, z).unwrap();
            let exact = -(C::new(1.0, 0.0) - z).ln() / z;
            assert!((v - exact).norm() < 1e-9, "{z}: {v} vs {exact}");
        }
    }

    #[test]
    fn forced_resonant_representation_errors() {
        let p = HypParams::real(1.0, 1.0, 2.0);
        let s = EvalSettings::default();
        let r = hyp2f1_planned(&p, c(-3.0, 0.0), None, Representation::ReciprocalZ, &s);
        assert!(matches!(r, Err(Error::ResonantParameters(_))));
        let r = hyp2f1_planned(&p, c(0.9, 0.0), None, Representation::OneMinusZ, &s);
        assert!(matches!(r, Err(Error::ResonantParameters(_))));
    }

    #[test]
    fn reciprocal_matches_transport() {
        // direct series at -0.5 continued by the hypergeometric ODE to -5
        let p = HypParams::real(0.2, 0.4, 1.3);
        let v = hyp2f1(&p, c(-5.0, 0.0)).unwrap();
        let start = c(-0.5, 0.0);
        let w0 = hyp2f1_series(&p, start).unwrap();
        let dw0 = 0.2 * 0.4 / 1.3 * hyp2f1_series(&p.shifted(1, 1, 1), start).unwrap();
        let path = PathSpec::through(&[start, c(-5.0, 0.0)], &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let (a, b, cc) = (p.a, p.b, p.c);
        let rhs = |x: C, y: &[C; 2]| [y[1], (a * b * y[0] - (cc - (a + b + 1.0) * x) * y[1]) / (x * (1.0 - x))];
        let s = OdeSettings { rtol: 1e-12, atol: 1e-15, ..Default::default() };
        let o = integrate_path(rhs, [w0, dw0], &path, &s).unwrap()[0];
        assert!((v - o).norm() / o.norm() < 1e-9, "{v} vs {o}");
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn cut_sides_are_conjugate_for_real_parameters() {
        let p = HypParams::real(0.2, 0.4, 1.3);
        for x in [1.3, 2.5, 7.0] {
            let up = hyp2f1_side(&p, c(x, 0.0), Some(CutSide::Above)).unwrap();
            let dn = hyp2f1_side(&p, c(x, 0.0), Some(CutSide::Below)).unwrap();
            assert!((up - dn.conj()).norm() < 1e-10);
            let near = hyp2f1(&p, c(x, 1e-9)).unwrap();
            assert!((up - near).norm() < 1e-7);
        }
    }

    #[test]
    fn derivative_examples() {
        let p = HypParams::real(0.3, 0.7, 1.1);
        let d0: C = hyp2f1_derivative(&p, c(0.0, 0.0), 1).unwrap();
        assert!((d0.re - 0.21 / 1.1).abs() < 1e-15);
        let d = hyp2f1_derivative(&HypParams::real(1.0, 1.0, 2.0), c(0.5, 0.0), 1).unwrap();
        assert!((d.re - (4.0 - 4.0 * LN_2)).abs() < 1e-13);
        let z = c(0.4, 0.0);
        let h = 1e-5;
        let fd = (hyp2f1(&p, z + h).unwrap() - hyp2f1(&p, z - h).unwrap()) / (2.0 * h);
        let d = hyp2f1_derivative(&p, z, 1).unwrap();
        assert!((fd - d).norm() < 1e-8);
    }

    #[test]
    fn single_precision_series() {
        let p = HypParams::<f32>::real(1.0, 1.0, 2.0);
        let v = hyp2f1(&p, c(0.5, 0.0)).unwrap();
        assert!((v.re - 2.0 * std::f32::consts::LN_2).abs() < 1e-5);
    }

    fn pt() -> impl Strategy<Value = C> {
        (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(x, y)| c(x, y))
    }

    fn params() -> impl Strategy<Value = HypParams<f64>> {
        (-1.5f64..1.5, -1.5f64..1.5, 0.2f64..2.5, -0.5f64..0.5).prop_map(|(a, b, cc, ai)| HypParams::new(c(a, ai), c(b, 0.0), c(cc, 0.0)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn gauss_summation(a in -2.0f64..2.0, b in -2.0f64..2.0, cc in 0.2f64..3.0) {
            prop_assume!(cc - a - b > 0.1);
            prop_assume!(dist_to_int(c::<f64>(cc - a - b, 0.0)) > 1e-3);
            prop_assume!(dist_to_nonpos_int(c::<f64>(cc - a, 0.0)) > 1e-3 && dist_to_nonpos_int(c::<f64>(cc - b, 0.0)) > 1e-3);
            let p = HypParams::real(a, b, cc);
            let s = EvalSettings::default();
            let g = |x: f64| gamma_complex(c::<f64>(x, 0.0)).unwrap();
            let exact = g(cc) * g(cc - a - b) / (g(cc - a) * g(cc - b));
            let limit = hyp2f1_planned(&p, c(1.0, 0.0), None, Representation::OneMinusZ, &s).unwrap();
            prop_assert!((limit - exact).norm() <= 1e-10 * exact.norm().max(1.0), "{} {}", limit, exact);
            // approach from below: the remainder decays like (1 - z)^(c - a - b)
            let e = cc - a - b;
            let w = 1e-8f64;
            let v = hyp2f1_planned(&p, c(1.0 - w, 0.0), None, Representation::OneMinusZ, &s).unwrap();
            let bound = 1e-6 * exact.norm().max(1.0) + 2.0 * (g(cc) * g(-e) * rgamma(c(a, 0.0)) * rgamma(c(b, 0.0))).norm() * w.powf(e);
            prop_assert!((v - exact).norm() <= bound, "{} {}", v, exact);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn plans_agree_on_overlap(p in params(), r in 0.5f64..0.8, th in 0.0f64..1.0) {
            prop_assume!(dist_to_int(p.c - p.a - p.b) > 1e-2);
            let z = C::from_polar(r, th * std::f64::consts::PI);
            prop_assume!(z.im > 0.1 && (C::new(1.0, 0.0) - z).norm() <= 0.8);
            let s = EvalSettings::default();
            let d = hyp2f1_planned(&p, z, None, Representation::DirectZ, &s).unwrap();
            let o = hyp2f1_planned(&p, z, None, Representation::OneMinusZ, &s).unwrap();
            prop_assert!((d - o).norm() <= 1e-9 * d.norm().max(1.0), "{} {}", d, o);
        }

        #[test]
        fn derivative_vs_finite_difference(p in params(), z in pt()) {
            prop_assume!(z.norm() > 0.1 && (z - 1.0).norm() > 0.1 && z.im.abs() > 0.05);
            prop_assume!(dist_to_int(p.c - p.a - p.b) > 1e-2 && dist_to_int(p.a - p.b) > 1e-2);
            let h = 1e-5 * z.norm().min((z - 1.0).norm());
            let fd = (hyp2f1(&p, z + h).unwrap() - hyp2f1(&p, z - h).unwrap()) / (2.0 * h);
            let d = hyp2f1_derivative(&p, z, 1).unwrap();
            prop_assert!((fd - d).norm() <= 1e-7 * d.norm().max(1e-3), "{} {}", fd, d);
        }

        #[test]
        fn ode_residual(p in params(), r in 0.0f64..0.7, th in 0.0f64..std::f64::consts::TAU) {
            let z = C::from_polar(r, th);
            let w = hyp2f1(&p, z).unwrap();
            let w1 = hyp2f1_derivative(&p, z, 1).unwrap();
            let w2 = hyp2f1_derivative(&p, z, 2).unwrap();
            let res = z * (1.0 - z) * w2 + (p.c - (p.a + p.b + 1.0) * z) * w1 - p.a * p.b * w;
            prop_assert!(res.norm() <= 1e-8, "{}", res);
        }

        #[test]
        fn continuation_is_consistent(p in params(), z in pt()) {
            // planner output vs the ODE route everywhere off the cut
            prop_assume!(z.norm() > 0.2 && (z - 1.0).norm() > 0.2 && z.im.abs() > 0.05);
            let s = EvalSettings::default();
            let v = hyp2f1_with(&p, z, None, &s).unwrap();
            let o = hyp2f1_planned(&p, z, None, Representation::OdeFallback, &s).unwrap();
            prop_assert!((v - o).norm() <= 1e-8 * o.norm().max(1.0), "{} {}", v, o);
        }
    }
}

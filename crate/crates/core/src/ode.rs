//! Adaptive Dormand–Prince 5(4) integration of holomorphic linear systems
//! along piecewise-linear paths in the complex plane.
//!
//! Each path segment `a -> b` is parameterized as `z(t) = a + (b - a) t`,
//! `t ∈ [0, 1]`, so `dy/dt = (b - a) f(z(t), y)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::scalar::Real;

/// Minimum distance a transport path keeps from the singular points.
pub const MIN_CLEARANCE: f64 = 0.05;
/// Maximum length of a single path segment.
pub const MAX_SEGMENT: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSettings {
    pub rtol: f64,
    pub atol: f64,
    /// Smallest admissible step, measured in z-units.
    pub min_step: f64,
    pub max_steps: usize,
}

impl Default for OdeSettings {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-14, min_step: 1e-13, max_steps: 1_000_000 }
    }
}

/// Ordered waypoints of an integration path together with the clearance it
/// keeps from a set of singular points.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSpec<T> {
    waypoints: Vec<Complex<T>>,
    clearance: T,
}

impl<T: Real> PathSpec<T> {
    /// Builds a path through `points`, subdividing long segments and
    /// checking that every segment stays at least [`MIN_CLEARANCE`] away
    /// from each of `singular`.
    pub fn through(points: &[Complex<T>], singular: &[Complex<T>]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidPath("need at least two waypoints".into()));
        }
        let max_seg = T::lit(MAX_SEGMENT) * T::lit(0.999);
        let mut waypoints = vec![points[0]];
        let mut clearance = T::infinity();
        for pair in points.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            for s in singular {
                clearance = clearance.min(segment_distance(a, b, *s));
            }
            let len = (b - a).norm();
            let pieces = (len / max_seg).ceil().max(T::one());
            let n = pieces.to_usize().unwrap_or(1).max(1);
            for k in 1..=n {
                let t = T::from_usize(k).unwrap() / T::from_usize(n).unwrap();
                waypoints.push(a + (b - a) * t);
            }
        }
        if clearance < T::lit(MIN_CLEARANCE) {
            return Err(Error::InvalidPath(format!(
                "path passes within {:.3e} of a singular point",
                clearance.as_f64()
            )));
        }
        Ok(Self { waypoints, clearance })
    }

    /// Closed polygonal loop approximating the circle through `base` about `center`.
    pub fn circle(center: Complex<T>, base: Complex<T>, clockwise: bool, singular: &[Complex<T>]) -> Result<Self> {
        let r = base - center;
        let n = ((r.norm() * T::TAU()) / T::lit(0.4)).ceil().max(T::lit(8.0)).to_usize().unwrap();
        let sign = if clockwise { -T::one() } else { T::one() };
        let pts: Vec<_> = (0..=n)
            .map(|k| {
                if k == n {
                    return base;
                }
                let th = sign * T::TAU() * T::from_usize(k).unwrap() / T::from_usize(n).unwrap();
                center + r * Complex::new(th.cos(), th.sin())
            })
            .collect();
        Self::through(&pts, singular)
    }

    /// Concatenates paths; the second must start where the first ends.
    pub fn then(mut self, other: &Self) -> Result<Self> {
        let end = *self.waypoints.last().unwrap();
        if (other.waypoints[0] - end).norm() > T::lit(1e-12) {
            return Err(Error::InvalidPath("paths are not contiguous".into()));
        }
        self.waypoints.extend_from_slice(&other.waypoints[1..]);
        self.clearance = self.clearance.min(other.clearance);
        Ok(self)
    }

    pub fn waypoints(&self) -> &[Complex<T>] {
        &self.waypoints
    }

    pub fn start(&self) -> Complex<T> {
        self.waypoints[0]
    }

    pub fn end(&self) -> Complex<T> {
        *self.waypoints.last().unwrap()
    }

    pub fn clearance(&self) -> T {
        self.clearance
    }

    pub fn length(&self) -> T {
        self.waypoints.windows(2).fold(T::zero(), |acc, w| acc + (w[1] - w[0]).norm())
    }
}

fn segment_distance<T: Real>(a: Complex<T>, b: Complex<T>, p: Complex<T>) -> T {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == T::zero() {
        return (p - a).norm();
    }
    let t = ((p - a) * d.conj()).re / len2;
    let t = t.max(T::zero()).min(T::one());
    (a + d * t - p).norm()
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<T: Real, const N: usize>(y: &[Complex<T>; N], terms: &[(f64, &[Complex<T>; N])], h: T) -> [Complex<T>; N] {
    let mut out = *y;
    for (coef, k) in terms {
        let s = T::lit(*coef) * h;
        for i in 0..N {
            out[i] = out[i] + k[i] * s;
        }
    }
    out
}

/// Integrates `dy/dz = f(z, y)` along `path`.
pub fn integrate_path<T, F, const N: usize>(
    f: F,
    y0: [Complex<T>; N],
    path: &PathSpec<T>,
    settings: &OdeSettings,
) -> Result<[Complex<T>; N]>
where
    T: Real,
    F: Fn(Complex<T>, &[Complex<T>; N]) -> [Complex<T>; N],
{
    let mut y = y0;
    let mut steps = 0usize;
    for seg in path.waypoints().windows(2) {
        y = integrate_segment(&f, y, seg[0], seg[1], settings, &mut steps)?;
    }
    Ok(y)
}

fn integrate_segment<T, F, const N: usize>(
    f: &F,
    y0: [Complex<T>; N],
    a: Complex<T>,
    b: Complex<T>,
    settings: &OdeSettings,
    steps: &mut usize,
) -> Result<[Complex<T>; N]>
where
    T: Real,
    F: Fn(Complex<T>, &[Complex<T>; N]) -> [Complex<T>; N],
{
    let dz = b - a;
    let len = dz.norm();
    if len == T::zero() {
        return Ok(y0);
    }
    let rhs = |t: T, y: &[Complex<T>; N]| {
        let mut k = f(a + dz * t, y);
        for v in k.iter_mut() {
            *v = *v * dz;
        }
        k
    };
    let eps = T::epsilon();
    let rtol = T::lit(settings.rtol).max(eps * T::lit(10.0));
    let atol = T::lit(settings.atol).max(eps * T::lit(1e-2));
    let min_step = T::lit(settings.min_step) / len;
    let safety = T::lit(0.9);
    let beta = T::lit(0.04);
    let alpha = T::lit(0.2) - beta * T::lit(0.75);

    let mut t = T::zero();
    let mut y = y0;
    let mut k1 = rhs(t, &y);
    let mut h = initial_step(&y, &k1, rtol, atol).min(T::one());
    let mut err_prev = T::lit(1e-4);
    let mut rejected = false;

    while t < T::one() {
        if *steps >= settings.max_steps {
            return Err(Error::StepUnderflow { min_step: settings.min_step, t: t.as_f64() });
        }
        *steps += 1;
        let last = t + h >= T::one();
        if last {
            h = T::one() - t;
        }
        let k2 = rhs(t + T::lit(C2) * h, &axpy(&y, &[(A21, &k1)], h));
        let k3 = rhs(t + T::lit(C3) * h, &axpy(&y, &[(A31, &k1), (A32, &k2)], h));
        let k4 = rhs(t + T::lit(C4) * h, &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h));
        let k5 = rhs(
            t + T::lit(C5) * h,
            &axpy(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h),
        );
        let k6 = rhs(
            t + h,
            &axpy(&y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h),
        );
        let y_new = axpy(&y, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)], h);
        let k7 = rhs(t + h, &y_new);

        let mut err = T::zero();
        for i in 0..N {
            let e = (k1[i] * T::lit(E1)
                + k3[i] * T::lit(E3)
                + k4[i] * T::lit(E4)
                + k5[i] * T::lit(E5)
                + k6[i] * T::lit(E6)
                + k7[i] * T::lit(E7))
                * h;
            let sc = atol + rtol * y[i].norm().max(y_new[i].norm());
            let ei = e.norm() / sc;
            err = if ei.is_finite() && y_new[i].norm().is_finite() { err.max(ei) } else { T::infinity() };
        }
        if !err.is_finite() {
            err = T::lit(1e10);
        }

        if err <= T::one() {
            t = if last { T::one() } else { t + h };
            y = y_new;
            k1 = k7;
            let e = err.max(T::lit(1e-10));
            let mut fac = safety * e.powf(-alpha) * err_prev.powf(beta);
            fac = fac.max(T::lit(0.2)).min(T::lit(5.0));
            if rejected {
                fac = fac.min(T::one());
            }
            h = h * fac;
            err_prev = e;
            rejected = false;
        } else {
            let fac = (safety * err.powf(-T::lit(0.2))).max(T::lit(0.2));
            h = h * fac;
            rejected = true;
        }
        if h < min_step && t < T::one() {
            return Err(Error::StepUnderflow { min_step: settings.min_step, t: t.as_f64() });
        }
    }
    Ok(y)
}

fn initial_step<T: Real, const N: usize>(y: &[Complex<T>; N], f: &[Complex<T>; N], rtol: T, atol: T) -> T {
    let mut d0 = T::zero();
    let mut d1 = T::zero();
    for i in 0..N {
        let sc = atol + rtol * y[i].norm();
        d0 = d0.max(y[i].norm() / sc);
        d1 = d1.max(f[i].norm() / sc);
    }
    let h = if d0 < T::lit(1e-5) || d1 < T::lit(1e-5) { T::lit(1e-3) } else { T::lit(0.01) * d0 / d1 };
    h.max(T::lit(1e-6))
}

/// Which side the coefficient matrix multiplies from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiply {
    /// `Φ' = A Φ`
    Left,
    /// `Φ' = Φ A`
    Right,
}

/// Transports a 2×2 frame along `path` under `Φ' = A Φ` or `Φ' = Φ A`.
pub fn ode_transport<T, A>(
    coeff: A,
    initial: &Mat2<T>,
    path: &PathSpec<T>,
    side: Multiply,
    settings: &OdeSettings,
) -> Result<Mat2<T>>
where
    T: Real,
    A: Fn(Complex<T>) -> Mat2<T>,
{
    let rhs = |z: Complex<T>, y: &[Complex<T>; 4]| {
        let a = coeff(z);
        let phi = Mat2::from_entries(*y);
        match side {
            Multiply::Left => (a * phi).entries(),
            Multiply::Right => (phi * a).entries(),
        }
    };
    let out = integrate_path(rhs, initial.entries(), path, settings)?;
    Ok(Mat2::from_entries(out))
}

/// Fixed-step classical RK4 for `Φ' = A Φ` along the segment `from → to`.
///
/// The result depends smoothly on `to`, which adaptive stepping does not guarantee.
pub fn rk4_segment<T, A>(coeff: A, initial: &Mat2<T>, from: Complex<T>, to: Complex<T>, steps: usize) -> Mat2<T>
where
    T: Real,
    A: Fn(Complex<T>) -> Mat2<T>,
{
    let h = (to - from) / T::lit(steps.max(1) as f64);
    let half = T::lit(0.5);
    let mut y = *initial;
    for k in 0..steps.max(1) {
        let z = from + h * T::lit(k as f64);
        let k1 = coeff(z) * y;
        let k2 = coeff(z + h * half) * (y + k1.scale(h * half));
        let k3 = coeff(z + h * half) * (y + k2.scale(h * half));
        let k4 = coeff(z + h) * (y + k3.scale(h));
        y = y + (k1 + k2.scale_re(T::lit(2.0)) + k3.scale_re(T::lit(2.0)) + k4).scale(h / T::lit(6.0));
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn origin() -> Vec<Complex<f64>> {
        vec![c(0.0, 0.0)]
    }

    #[test]
    fn constant_solution() {
        let init = Mat2::new(c(1.0, 2.0), c(0.5, 0.0), c(0.0, -1.0), c(3.0, 0.25));
        let path = PathSpec::through(&[c(0.3, 0.1), c(2.0, 1.0), c(-1.0, 1.0)], &origin()).unwrap();
        let out = ode_transport(|_| Mat2::zero(), &init, &path, Multiply::Left, &OdeSettings::default()).unwrap();
        assert!((out - init).max_abs() < 1e-15);
    }

    #[test]
    fn power_solution_around_origin() {
        // Φ = diag(z, 1/z) solves Φ' = diag(1/z, -1/z) Φ.
        let a = |z: Complex<f64>| Mat2::diag(z.inv(), -z.inv());
        let s = OdeSettings::default();
        let full = PathSpec::circle(c(0.0, 0.0), c(1.0, 0.0), false, &origin()).unwrap();
        let out = ode_transport(a, &Mat2::identity(), &full, Multiply::Left, &s).unwrap();
        assert!((out - Mat2::identity()).max_abs() < 1e-8, "{out:?}");

        let half: Vec<_> = (0..=16)
            .map(|k| {
                let th = std::f64::consts::PI * k as f64 / 16.0;
                c(th.cos(), th.sin())
            })
            .collect();
        let half = PathSpec::through(&half, &origin()).unwrap();
        let out = ode_transport(a, &Mat2::identity(), &half, Multiply::Right, &s).unwrap();
        assert!((out + Mat2::identity()).max_abs() < 1e-8);
    }

    #[test]
    fn exponential_accuracy() {
        // y' = y along a long path: y = exp(z - z0).
        let f = |_z: Complex<f64>, y: &[Complex<f64>; 1]| [y[0]];
        let pts = [c(0.0, 0.0), c(3.0, 4.0), c(-2.0, 6.0), c(1.0, -3.0)];
        let path = PathSpec::through(&pts, &[]).unwrap();
        assert!(path.length() < 20.0);
        let out = integrate_path(f, [c(1.0, 0.0)], &path, &OdeSettings::default()).unwrap();
        let exact = c(1.0, -3.0).exp();
        assert!((out[0] - exact).norm() / exact.norm() < 1e-8);
    }

    #[test]
    fn clearance_enforced() {
        let err = PathSpec::through(&[c(-1.0, 0.01), c(1.0, 0.01)], &origin());
        assert!(matches!(err, Err(Error::InvalidPath(_))));
        let ok = PathSpec::through(&[c(-1.0, 0.2), c(1.0, 0.2)], &origin()).unwrap();
        assert!(ok.waypoints().windows(2).all(|w| (w[1] - w[0]).norm() < MAX_SEGMENT));
        assert!((ok.clearance() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn step_underflow_reported() {
        // y' = y / (z - 1e-9) blows through the tolerance near the pole
        let f = |z: Complex<f64>, y: &[Complex<f64>; 1]| [y[0] / (z - c(0.5, 1e-15)).powi(4)];
        let path = PathSpec::through(&[c(0.0, 0.0), c(1.0, 0.0)], &[]).unwrap();
        let r = integrate_path(f, [c(1.0, 0.0)], &path, &OdeSettings::default());
        assert!(matches!(r, Err(Error::StepUnderflow { .. })));
    }
}

//! Unitarizability of the monodromy, the diagonal unitarizer and the
//! normalized one-parameter families of trinoid data.

use num_complex::Complex;

use super::data::{end_exponents, pairings, ModuliPoint, WeierstrassData, REAL_TOL};
use super::gauge::gauge_constants;
use crate::error::{Error, Result};
use crate::fuchsian::FuchsianParams;
use crate::linalg::{unitarity_defect, Mat2};
use crate::scalar::Real;
use crate::specfun::{gamma_complex, rgamma, sin_pi};

/// Width of the band around the region boundary where the two criteria may disagree.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitarityReport<T> {
    pub unitarizable: bool,
    pub moduli: ModuliPoint<T>,
    /// All `d` real and nonnegative.
    pub exponents_real: bool,
    /// Smallest slack of the region inequalities (positive inside).
    pub margin: Option<T>,
    /// `sin πa · sin πb · sin π(a−c) · sin π(b−c)`, negative exactly when unitarizable.
    pub trig_product: Option<T>,
}

/// Hypergeometric parameters from the moduli point directly.
fn abc_from_moduli<T: Real>(m: &ModuliPoint<T>) -> (T, T, T) {
    let half = T::lit(0.5);
    let [s0, s1, si] = m.d().map(|x| x.max(T::zero()).sqrt());
    (half - s0 + s1 + si, half - s0 + s1 - si, T::one() - s0 - s0)
}

pub fn trig_product<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>) -> Complex<T> {
    sin_pi(a) * sin_pi(b) * sin_pi(a - c) * sin_pi(b - c)
}

/// Decides unitarizability by the moduli region and cross-checks it with the sign test.
pub fn unitarizable<T: Real>(w: &WeierstrassData<T>) -> Result<UnitarityReport<T>> {
    let pr = pairings(w)?;
    let ex = end_exponents(w)?;
    let moduli = ex.moduli;
    let exponents_real = moduli.reduced.is_some() && moduli.imag_defect <= T::lit(REAL_TOL);
    let margin = moduli.region_margin();
    if !exponents_real {
        return Ok(UnitarityReport { unitarizable: false, moduli, exponents_real, margin, trig_product: None });
    }
    // a, b, c through the gauge constants when available; otherwise from d directly
    let (a, b, c) = match gauge_constants(w, &pr) {
        Ok(gc) => {
            let fp = gc.fuchsian();
            (fp.a, fp.b, fp.c)
        }
        Err(_) => {
            let (a, b, c) = abc_from_moduli(&moduli);
            let r = |x| Complex::new(x, T::zero());
            (r(a), r(b), r(c))
        }
    };
    let trig = trig_product(a, b, c).re;
    let margin_v = margin.unwrap_or(-T::infinity());
    let by_moduli = margin_v > T::zero();
    let by_trig = trig < T::zero();
    let tol = T::lit(BOUNDARY_TOL);
    if by_moduli != by_trig && margin_v.abs() > tol && trig.abs() > tol {
        return Err(Error::InconsistentCriteria { margin: margin_v.as_f64(), trig: trig.as_f64() });
    }
    Ok(UnitarityReport { unitarizable: by_moduli, moduli, exponents_real, margin, trig_product: Some(trig) })
}

/// The Γ-ratio expression `K` with `r⁴ K = 1`.
pub fn unitarizer_k<T: Real>(fp: &FuchsianParams<T>) -> Result<Complex<T>> {
    let FuchsianParams { alpha, gamma, delta, a, b, c, .. } = *fp;
    let one = Complex::new(T::one(), T::zero());
    let two = T::lit(2.0);
    let ap = alpha * two + one;
    let am = alpha * two - one;
    let mut k = ap * ap * gamma / (am * am * delta);
    for x in [c, c, -a, -b, a - c, b - c] {
        k = k * gamma_complex(x).map_err(|_| Error::ResonantParameters(format!("Gamma pole at {x}")))?;
    }
    for x in [-c, -c] {
        k = k * rgamma(x);
    }
    for x in [a, b, c - a, c - b] {
        k = k * rgamma(x);
    }
    Ok(k)
}

/// Positive `r` such that `R = diag(r, 1/r)` conjugates the monodromy into `SU(2)`.
pub fn unitarizer_r<T: Real>(fp: &FuchsianParams<T>) -> Result<T> {
    let k = unitarizer_k(fp)?;
    if !(k.re > T::zero()) || k.im.abs() > T::lit(1e-8) * k.norm() {
        return Err(Error::NotUnitarizable(format!("r^4 = 1/K has K = {k}, not positive")));
    }
    Ok(k.re.powf(-T::lit(0.25)))
}

pub fn unitarizer<T: Real>(r: T) -> Mat2<T> {
    Mat2::diag(Complex::new(r, T::zero()), Complex::new(r.recip(), T::zero()))
}

/// Largest unitarity defect of `R⁻¹ M R` over the given matrices.
pub fn conjugated_defect<T: Real>(ms: &[Mat2<T>], r: T) -> T {
    let ri = unitarizer(r.recip());
    let rr = unitarizer(r);
    ms.iter().fold(T::zero(), |acc, m| acc.max(unitarity_defect(&(ri * *m * rr))))
}

/// Minimizes [`conjugated_defect`] over `r` by a logarithmic scan followed by
/// golden-section refinement. Returns `(r, defect)`.
pub fn brute_force_r(ms: &[Mat2<f64>]) -> (f64, f64) {
    let f = |lr: f64| conjugated_defect(ms, lr.exp());
    let (lo, hi, n) = (-12.0f64, 12.0f64, 4801);
    let step = (hi - lo) / (n - 1) as f64;
    let mut best = (lo, f(lo));
    for k in 1..n {
        let x = lo + step * k as f64;
        let v = f(x);
        if v < best.1 {
            best = (x, v);
        }
    }
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (best.0 - step, best.0 + step);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-14 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x.exp(), f(x))
}

fn sqrt3<T: Real>() -> T {
    T::lit(3.0).sqrt()
}

/// Data with ends at the fixed ideal points: `p = ((2−√3)q₀, −q₁, (2+√3)q∞)`.
pub fn normalize_ends<T: Real>(q0: Complex<T>, q1: Complex<T>, q_inf: Complex<T>) -> Result<WeierstrassData<T>> {
    for (name, q) in [("q0", q0), ("q1", q1), ("qinf", q_inf)] {
        if q.norm() <= T::lit(1e-12) {
            return Err(Error::DegenerateData(format!("{name} vanishes")));
        }
    }
    let two = T::lit(2.0);
    let s3 = sqrt3::<T>();
    Ok(WeierstrassData::trinoid([q0 * (two - s3), -q1, q_inf * (two + s3)], [q0, q1, q_inf]))
}

/// Normalized data realizing the requested `(d₀, d₁, d∞)`.
pub fn from_moduli<T: Real>(d: [T; 3]) -> Result<WeierstrassData<T>> {
    let q = T::lit(0.25);
    let half = T::lit(0.5);
    let [c0, c1, ci] = d.map(|x| x - q);
    let s10 = (c0 + c1 - ci) * half;
    let s0i = (c0 + ci - c1) * half;
    let s1i = (c1 + ci - c0) * half;
    let s3 = sqrt3::<T>();
    let three = T::lit(3.0);
    let r = |x: T| Complex::new(x, T::zero());
    // products q₀q₁, q₀q∞, q₁q∞ from the normalized pairings
    let x01 = r(-s10 / (three - s3));
    let x0i = r(-s0i / (s3 + s3));
    let x1i = r(-s1i / (three + s3));
    let tol = T::lit(1e-14);
    if x01.norm() <= tol || x0i.norm() <= tol || x1i.norm() <= tol {
        return Err(Error::NotRepresentable(format!(
            "d = ({}, {}, {}) makes a pairing vanish",
            d[0], d[1], d[2]
        )));
    }
    let q0 = (x01 * x0i / x1i).sqrt();
    let w = normalize_ends(q0, x01 / q0, x0i / q0)?;
    let got = end_exponents(&w)?.moduli.d();
    let err = (0..3).fold(T::zero(), |m, k| m.max((got[k] - d[k]).abs()));
    if err > T::lit(1e-10) {
        return Err(Error::NotRepresentable(format!("normalized data reach d = ({}, {}, {})", got[0], got[1], got[2])));
    }
    Ok(w)
}

/// Symmetric trinoid data `d₀ = d₁ = d∞`.
pub fn symmetric_family<T: Real>(d0: T) -> Result<WeierstrassData<T>> {
    let alpha = T::lit(0.5) - d0.max(T::zero()).sqrt();
    let two_alpha = alpha + alpha;
    if d0 >= T::zero() && (two_alpha - two_alpha.round()).abs() < T::lit(1e-9) {
        return Err(Error::ResonantParameters(format!("2 alpha = {two_alpha} is an integer at d0 = {d0}")));
    }
    from_moduli([d0, d0, d0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmc1::data::pairings;
    use crate::fuchsian::monodromy_one;
    fn c(x: f64, y: f64) -> Complex<f64> {
        Complex::new(x, y)
    }
    use proptest::prelude::*;

    #[test]
    fn normalized_ones() {
        let w = normalize_ends(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        let (p, _) = w.trinoid_residues().unwrap();
        assert!((p[0].re - 0.267_949_192_4).abs() < 1e-9);
        assert_eq!(p[1], c(-1.0, 0.0));
        assert!((p[2].re - 3.732_050_807_6).abs() < 1e-9);
        assert!(matches!(normalize_ends(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)), Err(Error::DegenerateData(_))));
    }

    #[test]
    fn symmetric_point() {
        let w = symmetric_family(0.2f64).unwrap();
        let ex = end_exponents(&w).unwrap();
        for cj in ex.c {
            assert!((cj - c(-0.05, 0.0)).norm() < 1e-12);
        }
        let d = ex.moduli.d();
        assert!(d.iter().all(|x| (x - 0.2).abs() < 1e-10));
        let rep = unitarizable(&w).unwrap();
        assert!(rep.unitarizable && rep.trig_product.unwrap() < 0.0);
        assert!(matches!(symmetric_family(0.25f64), Err(Error::ResonantParameters(_))));
    }

    #[test]
    fn scaling_dials_d() {
        let w = normalize_ends(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        let t = c(0.3, 0.1);
        let a = end_exponents(&w).unwrap().c;
        let b = end_exponents(&w.scaled(t)).unwrap().c;
        for k in 0..3 {
            assert!((b[k] - a[k] * t * t).norm() < 1e-12);
        }
    }

    #[test]
    fn symmetric_unitarizer() {
        let w = symmetric_family(0.2f64).unwrap();
        let gc = gauge_constants(&w, &pairings(&w).unwrap()).unwrap();
        let fp = gc.fuchsian();
        assert!((fp.tau - 0.2f64.sqrt()).norm() < 1e-12);
        assert!((fp.rho - 0.2f64.sqrt()).norm() < 1e-12);
        let r = unitarizer_r(&fp).unwrap();
        let m1 = monodromy_one(&fp).unwrap();
        assert!(conjugated_defect(&[m1, fp.local_monodromy_zero()], r) <= 1e-8);
        let (rb, def) = brute_force_r(&[m1]);
        assert!(def < 1e-8);
        assert!((rb - r).abs() <= 1e-8 * r);
    }

    #[test]
    fn not_unitarizable_example() {
        let w = from_moduli([0.9f64, 0.0, 0.0]).unwrap();
        let rep = unitarizable(&w).unwrap();
        assert!(!rep.unitarizable);
        let gc = gauge_constants(&w, &pairings(&w).unwrap()).unwrap();
        assert!(matches!(unitarizer_r(&gc.fuchsian()), Err(Error::NotUnitarizable(_))));
    }

    #[test]
    fn negative_d_fails_condition_one() {
        let w = from_moduli([-0.1f64, 0.2, 0.2]).unwrap();
        let rep = unitarizable(&w).unwrap();
        assert!(!rep.unitarizable && !rep.exponents_real);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn moduli_and_trig_agree(d0 in 0.0f64..1.5, d1 in 0.0f64..1.5, di in 0.0f64..1.5) {
            let m = ModuliPoint::from_real([d0, d1, di]);
            let margin = m.region_margin().unwrap();
            let (a, b, cc) = abc_from_moduli(&m);
            let t = trig_product(c(a, 0.0), c(b, 0.0), c(cc, 0.0)).re;
            prop_assume!(margin.abs() > 1e-6 && t.abs() > 1e-12);
            prop_assert_eq!(margin > 0.0, t < 0.0, "margin {} trig {}", margin, t);
            if let Ok(w) = from_moduli([d0, d1, di]) {
                if let Ok(rep) = unitarizable(&w) {
                    prop_assert_eq!(rep.unitarizable, margin > 0.0);
                }
            }
        }
    }
}

//! Shifted hypergeometric functions ₂F₁(a+l, b+m; c+n; z) from the two base
//! evaluations ₂F₁(a, b; c; z) and ₂F₁(a, b; c+1; z).

use num_complex::Complex;
use num_traits::{One, Zero};

use super::hyp2f1::{hyp2f1, HypParams};
use crate::error::{Error, Result};
use crate::scalar::{dist_to_nonpos_int, Real};

const MAX_SHIFT: i32 = 4;
const ZERO_TOL: f64 = 1e-12;

/// Value and derivative of a contiguous function at fixed `z`.
#[derive(Clone, Copy)]
struct Jet<T> {
    p: HypParams<T>,
    g: Complex<T>,
    dg: Complex<T>,
}

#[derive(Clone, Copy)]
enum Step {
    Up,
    Down,
}

fn nonzero<T: Real>(x: Complex<T>, what: &str) -> Result<Complex<T>> {
    if x.norm() < T::lit(ZERO_TOL) {
        return Err(Error::ResonantParameters(format!("contiguous step divides by {what} = 0")));
    }
    Ok(x)
}

impl<T: Real> Jet<T> {
    fn second(&self, z: Complex<T>) -> Complex<T> {
        let HypParams { a, b, c } = self.p;
        (a * b * self.g - (c - (a + b + T::one()) * z) * self.dg) / (z * (Complex::<T>::one() - z))
    }

    fn swap_ab(self) -> Self {
        Jet { p: HypParams::new(self.p.b, self.p.a, self.p.c), ..self }
    }

    fn step_a(self, z: Complex<T>, dir: Step) -> Result<Self> {
        let HypParams { a, b, c } = self.p;
        let (g, dg, d2) = (self.g, self.dg, self.second(z));
        let one = Complex::<T>::one();
        Ok(match dir {
            Step::Up => {
                let a = nonzero(a, "a")?;
                Jet { p: HypParams::new(a + one, b, c), g: g + z / a * dg, dg: dg + dg / a + z / a * d2 }
            }
            Step::Down => {
                let k = nonzero(c - a, "c - a")?;
                let lin = c - a - b * z;
                let w = z * (one - z);
                Jet {
                    p: HypParams::new(a - one, b, c),
                    g: (lin * g + w * dg) / k,
                    dg: (-b * g + lin * dg + (one - z * T::lit(2.0)) * dg + w * d2) / k,
                }
            }
        })
    }

    fn step_c(self, z: Complex<T>, dir: Step) -> Result<Self> {
        let HypParams { a, b, c } = self.p;
        let (g, dg, d2) = (self.g, self.dg, self.second(z));
        let one = Complex::<T>::one();
        Ok(match dir {
            Step::Down => {
                let k = nonzero(c - one, "c - 1")?;
                Jet { p: HypParams::new(a, b, c - one), g: g + z * dg / k, dg: dg + (dg + z * d2) / k }
            }
            Step::Up => {
                let k = c / (nonzero(c - a, "c - a")? * nonzero(c - b, "c - b")?);
                let s = a + b - c;
                Jet {
                    p: HypParams::new(a, b, c + one),
                    g: k * ((one - z) * dg - s * g),
                    dg: k * (-dg + (one - z) * d2 - s * dg),
                }
            }
        })
    }
}

/// ₂F₁(a+l, b+m; c+n; z) for integer shifts `|l|, |m|, |n| ≤ 4`.
///
/// Each unit step loses roughly `log10(1/|z|)` digits near the origin, where
/// all contiguous functions agree to first order.
pub fn contiguous_reduce<T: Real>(p: &HypParams<T>, z: Complex<T>, shifts: (i32, i32, i32)) -> Result<Complex<T>> {
    let (l, m, n) = shifts;
    if l.abs() > MAX_SHIFT || m.abs() > MAX_SHIFT || n.abs() > MAX_SHIFT {
        return Err(Error::NotRepresentable(format!("shifts {shifts:?} exceed {MAX_SHIFT}")));
    }
    let target = p.shifted(l, m, n);
    for k in 0..=n.abs() {
        let ck = p.c + T::from_i32(k * n.signum()).unwrap();
        if dist_to_nonpos_int(ck) < T::lit(1e-9) {
            return Err(Error::DegenerateC { re: ck.re.as_f64(), im: ck.im.as_f64() });
        }
    }
    if shifts == (0, 0, 0) {
        return hyp2f1(p, z);
    }
    if z.is_zero() {
        return Ok(Complex::<T>::one());
    }
    if (z - Complex::<T>::one()).norm() < T::lit(ZERO_TOL) {
        return Err(Error::NotRepresentable("contiguous relations are singular at z = 1".into()));
    }
    let HypParams { a, b, c } = *p;
    let f0 = hyp2f1(p, z)?;
    let one = Complex::<T>::one();
    match shifts {
        (1, 1, 1) | (1, 1, 2) => {
            let f1 = hyp2f1(&p.shifted(0, 0, 1), z)?;
            return if shifts.2 == 1 {
                let den = nonzero(a * b * (one - z), "a b (1 - z)")?;
                Ok((c * (a + b - c) * f0 + (c - a) * (c - b) * f1) / den)
            } else {
                let den = nonzero(a * b * z, "a b z")?;
                Ok(c * (c + one) / den * (f0 - f1))
            };
        }
        _ => {}
    }
    let df0 = a * b / c * hyp2f1(&p.shifted(1, 1, 1), z)?;
    let mut jet = Jet { p: *p, g: f0, dg: df0 };
    let dir = |k: i32| if k > 0 { Step::Up } else { Step::Down };
    for _ in 0..n.abs() {
        jet = jet.step_c(z, dir(n))?;
    }
    for _ in 0..l.abs() {
        jet = jet.step_a(z, dir(l))?;
    }
    jet = jet.swap_ab();
    for _ in 0..m.abs() {
        jet = jet.step_a(z, dir(m))?;
    }
    jet = jet.swap_ab();
    debug_assert!((jet.p.a - target.a).norm() < T::lit(1e-12));
    Ok(jet.g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use crate::specfun::hyp2f1_series;
    use proptest::prelude::*;

    #[test]
    fn identity_shift() {
        let p = HypParams::real(0.3, 0.7, 1.1);
        let z = c(0.4, 0.0);
        assert_eq!(contiguous_reduce(&p, z, (0, 0, 0)).unwrap(), hyp2f1(&p, z).unwrap());
    }

    #[test]
    fn displayed_relations() {
        let p = HypParams::real(0.3, 0.7, 1.1);
        let z = c(0.4, 0.0);
        let v = contiguous_reduce(&p, z, (1, 1, 2)).unwrap();
        let o = hyp2f1_series(&HypParams::real(1.3, 1.7, 3.1), z).unwrap();
        assert!((v - o).norm() < 1e-12);
        let v = contiguous_reduce(&p, z, (1, 1, 1)).unwrap();
        let o = hyp2f1_series(&HypParams::real(1.3, 1.7, 2.1), z).unwrap();
        assert!((v - o).norm() < 1e-12);
    }

    #[test]
    fn pole_in_intermediate_c() {
        let p = HypParams::real(0.3, 0.7, 1.0);
        assert!(matches!(contiguous_reduce(&p, c(0.4, 0.0), (0, 0, -2)), Err(Error::DegenerateC { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn agrees_with_series(
            a in 0.1f64..0.9, b in -0.9f64..-0.1, cc in 4.6f64..5.4,
            l in -4i32..=4, m in -4i32..=4, n in -4i32..=4,
            r in 0.1f64..0.7, th in 0.0f64..std::f64::consts::TAU,
        ) {
            let p = HypParams::real(a, b, cc);
            let z = Complex::from_polar(r, th);
            let v = contiguous_reduce(&p, z, (l, m, n)).unwrap();
            let o = hyp2f1_series(&p.shifted(l, m, n), z).unwrap();
            prop_assert!((v - o).norm() <= 1e-9 * o.norm().max(1.0), "{} {}", v, o);
        }
    }
}

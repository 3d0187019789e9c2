//! Complex Gamma function by the Lanczos approximation (g = 7, 15 terms).

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{dist_to_nonpos_int, Real};

/// Distance to a nonpositive integer below which the argument counts as a pole.
pub const POLE_TOL: f64 = 1e-12;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 15] = [
    1.000_000_000_000_000_007_4,
    676.520_368_121_883_537_21,
    -1_259.139_216_722_281_773_9,
    771.323_428_775_437_706_52,
    -176.615_029_145_989_781_09,
    12.507_343_225_028_745_327,
    -0.138_571_032_333_282_243_13,
    1.009_112_629_473_137_286_2e-5,
    -3.434_584_225_253_104_608_1e-7,
    8.359_337_835_712_596_538_2e-7,
    -8.597_755_644_539_608_755_4e-7,
    6.046_497_338_494_928_107_8e-7,
    -2.911_328_727_890_613_713_9e-7,
    8.589_129_313_568_226_855_9e-8,
    -1.164_606_563_986_785_152_9e-8,
];

/// `sin(πz)` with the real part reduced first so large arguments stay accurate.
pub(crate) fn sin_pi<T: Real>(z: Complex<T>) -> Complex<T> {
    let n = z.re.round();
    let w = Complex::new(z.re - n, z.im) * T::PI();
    let s = w.sin();
    if (n.to_i64().unwrap_or(0) & 1) == 1 {
        -s
    } else {
        s
    }
}

fn lanczos<T: Real>(z: Complex<T>) -> Complex<T> {
    // Γ(z) for Re z ≥ ½, written as Γ(x + 1) with x = z − 1.
    let x = z - T::one();
    let mut sum = Complex::new(T::lit(LANCZOS[0]), T::zero());
    for (k, coef) in LANCZOS.iter().enumerate().skip(1) {
        sum = sum + Complex::new(T::lit(*coef), T::zero()) / (x + T::from_usize(k).unwrap());
    }
    let t = x + T::lit(LANCZOS_G + 0.5);
    let half = T::lit(0.5);
    ((x + half) * t.ln() - t).exp() * sum * T::TAU().sqrt()
}

/// Γ(z) for complex `z`.
pub fn gamma_complex<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if dist_to_nonpos_int(z) < T::lit(POLE_TOL) {
        return Err(Error::GammaPole { re: z.re.as_f64(), im: z.im.as_f64() });
    }
    if z.re < T::lit(0.5) {
        let s = sin_pi(z);
        let g = lanczos(Complex::<T>::one() - z);
        Ok(Complex::new(T::PI(), T::zero()) / (s * g))
    } else {
        Ok(lanczos(z))
    }
}

/// 1/Γ(z), which is entire; exactly zero at the poles of Γ.
pub fn rgamma<T: Real>(z: Complex<T>) -> Complex<T> {
    if dist_to_nonpos_int(z) < T::lit(POLE_TOL) {
        return Complex::<T>::zero();
    }
    if z.re < T::lit(0.5) {
        sin_pi(z) * lanczos(Complex::<T>::one() - z) / T::PI()
    } else {
        lanczos(z).inv()
    }
}

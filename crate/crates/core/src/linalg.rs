//! 2×2 complex matrices and the Hermitian model of Minkowski space.
//!
//! A point `(x0, x1, x2, x3)` of Minkowski space is identified with the
//! Hermitian matrix
//!
//! ```text
//!     [ x0 + x3     x1 + i x2 ]
//!     [ x1 - i x2   x0 - x3   ]
//! ```
//!
//! so that `<X, X> = -det X` and hyperbolic space is the upper sheet
//! `det X = 1, trace X > 0`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};

/// Hermiticity defect above which [`lorentz_from_herm`] refuses its input.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Hyperboloid defect above which [`to_poincare_ball`] refuses its input.
pub const HYPERBOLOID_TOL: f64 = 1e-6;
/// Determinant magnitude treated as singular by [`Mat2::inverse`].
pub const SINGULAR_DET: f64 = 1e-300;

/// Complex 2×2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat2<T> {
    pub m11: Complex<T>,
    pub m12: Complex<T>,
    pub m21: Complex<T>,
    pub m22: Complex<T>,
}

impl<T: Real> Mat2<T> {
    pub fn new(m11: Complex<T>, m12: Complex<T>, m21: Complex<T>, m22: Complex<T>) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        Self::diag(Complex::one(), Complex::one())
    }

    pub fn zero() -> Self {
        Self::diag(Complex::zero(), Complex::zero())
    }

    pub fn diag(d1: Complex<T>, d2: Complex<T>) -> Self {
        Self::new(d1, Complex::zero(), Complex::zero(), d2)
    }

    pub fn from_real(m11: T, m12: T, m21: T, m22: T) -> Self {
        let r = |x: T| Complex::new(x, T::zero());
        Self::new(r(m11), r(m12), r(m21), r(m22))
    }

    pub fn det(&self) -> Complex<T> {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn trace(&self) -> Complex<T> {
        self.m11 + self.m22
    }

    /// Conjugate transpose `M*`.
    pub fn adjoint(&self) -> Self {
        Self::new(self.m11.conj(), self.m21.conj(), self.m12.conj(), self.m22.conj())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.m11.conj(), self.m12.conj(), self.m21.conj(), self.m22.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m11, self.m21, self.m12, self.m22)
    }

    /// Adjugate, `adj(M) M = det(M) I`.
    pub fn adjugate(&self) -> Self {
        Self::new(self.m22, -self.m12, -self.m21, self.m11)
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.norm() <= T::lit(SINGULAR_DET) || !is_finite(det) {
            return Err(Error::SingularMatrix { det: det.norm().as_f64() });
        }
        Ok(self.adjugate().scale(det.inv()))
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.m11 * s, self.m12 * s, self.m21 * s, self.m22 * s)
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    pub fn entries(&self) -> [Complex<T>; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }

    pub fn from_entries(e: [Complex<T>; 4]) -> Self {
        Self::new(e[0], e[1], e[2], e[3])
    }

    /// Max absolute entry; the norm used for every defect measure.
    pub fn max_abs(&self) -> T {
        self.entries().iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| is_finite(*z))
    }

    pub fn cast<U: Real>(&self) -> Mat2<U> {
        let f = |z: Complex<T>| Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64()));
        Mat2::new(f(self.m11), f(self.m12), f(self.m21), f(self.m22))
    }
}

impl<T: Real> Add for Mat2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.m11 + o.m11, self.m12 + o.m12, self.m21 + o.m21, self.m22 + o.m22)
    }
}

impl<T: Real> Sub for Mat2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.m11 - o.m11, self.m12 - o.m12, self.m21 - o.m21, self.m22 - o.m22)
    }
}

impl<T: Real> Neg for Mat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.m11, -self.m12, -self.m21, -self.m22)
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )
    }
}

/// `max |M M* - I|`; zero iff `M` is unitary.
pub fn unitarity_defect<T: Real>(m: &Mat2<T>) -> T {
    (*m * m.adjoint() - Mat2::identity()).max_abs()
}

/// Max-entry relative distance `|A - B| / max(|A|, tiny)`.
pub fn rel_diff<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> T {
    let scale = a.max_abs().max(T::min_positive_value());
    (*a - *b).max_abs() / scale
}

/// Hermitian 2×2 matrix. Construction symmetrizes `(X + X*)/2` and keeps
/// the pre-symmetrization defect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hermitian2<T> {
    mat: Mat2<T>,
    defect: T,
}

impl<T: Real> Hermitian2<T> {
    /// Symmetrizes any matrix, recording `max |X - X*|`.
    pub fn symmetrize(m: &Mat2<T>) -> Self {
        let defect = (*m - m.adjoint()).max_abs();
        let half = T::lit(0.5);
        let s = (*m + m.adjoint()).scale_re(half);
        let mat = Mat2::new(
            Complex::new(s.m11.re, T::zero()),
            s.m12,
            s.m12.conj(),
            Complex::new(s.m22.re, T::zero()),
        );
        Self { mat, defect }
    }

    /// Accepts `m` only if its hermiticity defect is within [`HERMITIAN_TOL`].
    pub fn try_new(m: &Mat2<T>) -> Result<Self> {
        let h = Self::symmetrize(m);
        if !(h.defect <= T::lit(HERMITIAN_TOL)) {
            return Err(Error::NotHermitian { defect: h.defect.as_f64() });
        }
        Ok(h)
    }

    pub fn mat(&self) -> &Mat2<T> {
        &self.mat
    }

    pub fn defect(&self) -> T {
        self.defect
    }

    pub fn det(&self) -> T {
        self.mat.det().re
    }

    pub fn trace(&self) -> T {
        self.mat.trace().re
    }
}

/// Minkowski 4-vector, signature `(-, +, +, +)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Minkowski4<T> {
    pub x0: T,
    pub x1: T,
    pub x2: T,
    pub x3: T,
}

impl<T: Real> Minkowski4<T> {
    pub fn new(x0: T, x1: T, x2: T, x3: T) -> Self {
        Self { x0, x1, x2, x3 }
    }

    pub fn dot(&self, o: &Self) -> T {
        -self.x0 * o.x0 + self.x1 * o.x1 + self.x2 * o.x2 + self.x3 * o.x3
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.x0 * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }

    pub fn as_array(&self) -> [T; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    /// `|<X, X> + 1|`, plus a unit penalty when `x0 <= 0`.
    pub fn hyperboloid_defect(&self) -> T {
        let d = (self.dot(self) + T::one()).abs();
        if self.x0 > T::zero() {
            d
        } else {
            d + T::one()
        }
    }
}

impl<T: Real> Add for Minkowski4<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl<T: Real> Sub for Minkowski4<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

pub fn herm_from_lorentz<T: Real>(x: &Minkowski4<T>) -> Hermitian2<T> {
    let m = Mat2::new(
        Complex::new(x.x0 + x.x3, T::zero()),
        Complex::new(x.x1, x.x2),
        Complex::new(x.x1, -x.x2),
        Complex::new(x.x0 - x.x3, T::zero()),
    );
    Hermitian2 { mat: m, defect: T::zero() }
}

/// Inverse of [`herm_from_lorentz`]; rejects non-Hermitian input.
pub fn lorentz_from_herm<T: Real>(m: &Mat2<T>) -> Result<Minkowski4<T>> {
    let h = Hermitian2::try_new(m)?;
    Ok(lorentz_of(&h))
}

pub fn lorentz_of<T: Real>(h: &Hermitian2<T>) -> Minkowski4<T> {
    let m = h.mat();
    let half = T::lit(0.5);
    Minkowski4::new(
        (m.m11.re + m.m22.re) * half,
        m.m12.re,
        m.m12.im,
        (m.m11.re - m.m22.re) * half,
    )
}

/// `<X, Y> = -1/2 trace(X σ2 Yᵀ σ2)`.
pub fn minkowski_dot<T: Real>(x: &Hermitian2<T>, y: &Hermitian2<T>) -> T {
    minkowski_dot_complex(x.mat(), y.mat()).re
}

/// Complex-bilinear extension of the scalar product to all 2×2 matrices.
pub fn minkowski_dot_complex<T: Real>(x: &Mat2<T>, y: &Mat2<T>) -> Complex<T> {
    let i = Complex::new(T::zero(), T::one());
    let sigma2 = Mat2::new(Complex::zero(), -i, i, Complex::zero());
    let prod = *x * sigma2 * y.transpose() * sigma2;
    -prod.trace() * T::lit(0.5)
}

/// Projects a hyperboloid point into the Poincaré ball, `(x1, x2, x3) / (1 + x0)`.
pub fn to_poincare_ball<T: Real>(x: &Minkowski4<T>) -> Result<[T; 3]> {
    let defect = x.hyperboloid_defect();
    if !(defect <= T::lit(HYPERBOLOID_TOL)) {
        return Err(Error::NotOnHyperboloid { defect: defect.as_f64() });
    }
    let s = T::one() + x.x0;
    Ok([x.x1 / s, x.x2 / s, x.x3 / s])
}

/// Hyperbolic distance `arccosh(-<X, Y>)` between two hyperboloid points.
pub fn hyperbolic_distance<T: Real>(x: &Minkowski4<T>, y: &Minkowski4<T>) -> T {
    // acosh loses precision near 1; use 2 asinh(|X - Y| / 2) with the Minkowski norm of the chord.
    let d = *x - *y;
    let chord = d.dot(&d).max(T::zero()).sqrt();
    T::lit(2.0) * (chord * T::lit(0.5)).asinh()
}

//! Weierstrass spinor data `P = Σ pᵢ/(z−zᵢ) + p∞`, `Q = Σ qᵢ/(z−zᵢ) + q∞`,
//! their pairings, end exponents and the moduli point.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::scalar::Real;

/// Pairings of magnitude below this are treated as zero.
pub const PAIRING_TOL: f64 = 1e-10;
/// Imaginary parts of `d` below this count as real.
pub const REAL_TOL: f64 = 1e-10;
/// Largest allowed disagreement between the two end-exponent routes.
pub const EXPONENT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassData<T> {
    pub punctures: Vec<Complex<T>>,
    pub p: Vec<Complex<T>>,
    pub q: Vec<Complex<T>>,
    pub p_inf: Complex<T>,
    pub q_inf: Complex<T>,
}

impl<T: Real> WeierstrassData<T> {
    pub fn new(
        punctures: Vec<Complex<T>>,
        p: Vec<Complex<T>>,
        q: Vec<Complex<T>>,
        p_inf: Complex<T>,
        q_inf: Complex<T>,
    ) -> Result<Self> {
        if p.len() != punctures.len() || q.len() != punctures.len() {
            return Err(Error::DegenerateData("one residue pair per finite puncture".into()));
        }
        Ok(Self { punctures, p, q, p_inf, q_inf })
    }

    /// Trinoid data with punctures at 0, 1 and ∞; residues ordered (0, 1, ∞).
    pub fn trinoid(p: [Complex<T>; 3], q: [Complex<T>; 3]) -> Self {
        Self {
            punctures: vec![Complex::zero(), Complex::one()],
            p: vec![p[0], p[1]],
            q: vec![q[0], q[1]],
            p_inf: p[2],
            q_inf: q[2],
        }
    }

    pub fn is_trinoid(&self) -> bool {
        self.punctures.len() == 2 && self.punctures[0] == Complex::zero() && self.punctures[1] == Complex::one()
    }

    /// `((p₀, p₁, p∞), (q₀, q₁, q∞))` of trinoid data.
    pub fn trinoid_residues(&self) -> Result<([Complex<T>; 3], [Complex<T>; 3])> {
        if !self.is_trinoid() {
            return Err(Error::NotRepresentable("data does not have punctures 0, 1, inf".into()));
        }
        Ok(([self.p[0], self.p[1], self.p_inf], [self.q[0], self.q[1], self.q_inf]))
    }

    /// Exchanges the roles of `P` and `Q`.
    pub fn swapped(&self) -> Self {
        Self { p: self.q.clone(), q: self.p.clone(), p_inf: self.q_inf, q_inf: self.p_inf, ..self.clone() }
    }

    /// Multiplies both `P` and `Q` by `t`.
    pub fn scaled(&self, t: Complex<T>) -> Self {
        Self {
            p: self.p.iter().map(|x| *x * t).collect(),
            q: self.q.iter().map(|x| *x * t).collect(),
            p_inf: self.p_inf * t,
            q_inf: self.q_inf * t,
            ..self.clone()
        }
    }

    fn eval(&self, res: &[Complex<T>], inf: Complex<T>, z: Complex<T>) -> Complex<T> {
        self.punctures.iter().zip(res).fold(inf, |acc, (zi, r)| acc + *r / (z - *zi))
    }

    fn eval_d(&self, res: &[Complex<T>], z: Complex<T>) -> Complex<T> {
        self.punctures.iter().zip(res).fold(Complex::zero(), |acc, (zi, r)| {
            let d = z - *zi;
            acc - *r / (d * d)
        })
    }

    pub fn p_at(&self, z: Complex<T>) -> Complex<T> {
        self.eval(&self.p, self.p_inf, z)
    }

    pub fn q_at(&self, z: Complex<T>) -> Complex<T> {
        self.eval(&self.q, self.q_inf, z)
    }

    pub fn dp_at(&self, z: Complex<T>) -> Complex<T> {
        self.eval_d(&self.p, z)
    }

    pub fn dq_at(&self, z: Complex<T>) -> Complex<T> {
        self.eval_d(&self.q, z)
    }

    /// `[[PQ, P²], [−Q², −PQ]]`, the coefficient of `Ψ' = A Ψ`.
    pub fn coefficient(&self, z: Complex<T>) -> Mat2<T> {
        let p = self.p_at(z);
        let q = self.q_at(z);
        Mat2::new(p * q, p * p, -q * q, -p * q)
    }

    /// Distance from `z` to the nearest finite puncture.
    pub fn puncture_distance(&self, z: Complex<T>) -> T {
        self.punctures.iter().fold(T::infinity(), |m, zi| m.min((z - *zi).norm()))
    }
}

/// Antisymmetric pairings `⟨p,q⟩ᵢⱼ = pᵢqⱼ − pⱼqᵢ` of trinoid data and `Δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pairings<T> {
    pub s10: Complex<T>,
    pub s0inf: Complex<T>,
    pub s1inf: Complex<T>,
    pub delta: Complex<T>,
}

impl<T: Real> Pairings<T> {
    /// Computes the pairings without validating them.
    pub fn compute(w: &WeierstrassData<T>) -> Result<Self> {
        let ([p0, p1, pi], [q0, q1, qi]) = w.trinoid_residues()?;
        let s10 = p1 * q0 - p0 * q1;
        let s0inf = p0 * qi - pi * q0;
        let s1inf = p1 * qi - pi * q1;
        Ok(Self { s10, s0inf, s1inf, delta: s10 * s0inf + s10 * s1inf + s0inf * s1inf })
    }
}

/// Pairings of trinoid data; all four must be nonzero.
pub fn pairings<T: Real>(w: &WeierstrassData<T>) -> Result<Pairings<T>> {
    let pr = Pairings::compute(w)?;
    let tol = T::lit(PAIRING_TOL);
    let vanishing: Vec<_> = [("<p,q>_10", pr.s10), ("<p,q>_0inf", pr.s0inf), ("<p,q>_1inf", pr.s1inf), ("Delta", pr.delta)]
        .iter()
        .filter(|(_, v)| v.norm() <= tol)
        .map(|(n, _)| *n)
        .collect();
    if !vanishing.is_empty() {
        return Err(Error::DegenerateData(format!("vanishing: {}", vanishing.join(", "))));
    }
    Ok(pr)
}

/// `{x}`: the unique `y ∈ [−½, ½)` with `x − y ∈ ℤ`.
pub fn frac_half<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    let y = x - (x + half).floor();
    if y >= half {
        y - T::one()
    } else {
        y
    }
}

/// Point `(d₀, d₁, d∞)` of the moduli space with its reduced triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuliPoint<T> {
    pub d0: T,
    pub d1: T,
    pub dinf: T,
    /// Largest imaginary part among the `d` values.
    pub imag_defect: T,
    /// `(|{√d₀}|, |{√d₁}|, |{√d∞}|)`, present when every `d` is real and nonnegative.
    pub reduced: Option<[T; 3]>,
}

impl<T: Real> ModuliPoint<T> {
    pub fn from_complex(d: [Complex<T>; 3]) -> Self {
        let imag_defect = d.iter().fold(T::zero(), |m, x| m.max(x.im.abs()));
        let re = [d[0].re, d[1].re, d[2].re];
        let mut p = Self::from_real(re);
        p.imag_defect = imag_defect;
        if imag_defect > T::lit(REAL_TOL) {
            p.reduced = None;
        }
        p
    }

    pub fn from_real(d: [T; 3]) -> Self {
        let reduced = if d.iter().all(|x| *x >= T::zero()) { Some(d.map(|x| frac_half(x.sqrt()).abs())) } else { None };
        Self { d0: d[0], d1: d[1], dinf: d[2], imag_defect: T::zero(), reduced }
    }

    pub fn d(&self) -> [T; 3] {
        [self.d0, self.d1, self.dinf]
    }

    /// Smallest slack of the four strict inequalities defining the unitarizable region.
    pub fn region_margin(&self) -> Option<T> {
        let [x, y, z] = self.reduced?;
        let half = T::lit(0.5);
        Some((x + y + z - half).min(half - (x + y - z)).min(half - (x + z - y)).min(half - (y + z - x)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndExponents<T> {
    /// `(c₀, c₁, c∞)`
    pub c: [Complex<T>; 3],
    /// `αⱼ = ½ + √(¼ + cⱼ)`
    pub alpha: [Complex<T>; 3],
    pub moduli: ModuliPoint<T>,
    /// Largest difference between the pairing route and the local-expansion route.
    pub route_defect: T,
}

/// `½ + √(¼ + r)`.
pub fn exponent_from_residue<T: Real>(r: Complex<T>) -> Complex<T> {
    let q = T::lit(0.25);
    (r + q).sqrt() + T::lit(0.5)
}

/// `a₋₁b₀ − a₀b₋₁` from the Laurent coefficients of `P` and `Q` at each end of trinoid data.
fn expansion_residues<T: Real>(w: &WeierstrassData<T>) -> Result<[Complex<T>; 3]> {
    let ([p0, p1, pi], [q0, q1, qi]) = w.trinoid_residues()?;
    let i = Complex::new(T::zero(), T::one());
    // (a₋₁, a₀) for P and (b₋₁, b₀) for Q; at ∞ in the coordinate 1/z with spinor factor i
    let ends = [
        ((p0, pi - p1), (q0, qi - q1)),
        ((p1, p0 + pi), (q1, q0 + qi)),
        ((i * pi, i * (p0 + p1)), (i * qi, i * (q0 + q1))),
    ];
    Ok(ends.map(|((am, a0), (bm, b0))| am * b0 - a0 * bm))
}

pub fn end_exponents<T: Real>(w: &WeierstrassData<T>) -> Result<EndExponents<T>> {
    let pr = pairings(w)?;
    let c = [pr.s10 + pr.s0inf, pr.s10 + pr.s1inf, pr.s0inf + pr.s1inf];
    let other = expansion_residues(w)?;
    let mut route_defect = T::zero();
    for (k, name) in ["0", "1", "inf"].into_iter().enumerate() {
        let d = (c[k] - other[k]).norm();
        route_defect = route_defect.max(d);
        if d > T::lit(EXPONENT_TOL) * c[k].norm().max(T::one()) {
            return Err(Error::MismatchedExponents { end: name, defect: d.as_f64() });
        }
    }
    let q = T::lit(0.25);
    let moduli = ModuliPoint::from_complex(c.map(|x| x + q));
    Ok(EndExponents { c, alpha: c.map(exponent_from_residue), moduli, route_defect })
}

//! Precomputed trinoid bundle: gauge, connection matrices, unitarizer and
//! the frame `Ψ = κ D Φ⁽⁰⁾ R` with `det Ψ = 1`.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::data::{end_exponents, pairings, EndExponents, Pairings, WeierstrassData};
use super::gauge::{gauge_constants, gauge_d, GaugeConstants};
use super::moduli::{conjugated_defect, unitarizable, unitarizer, unitarizer_r, UnitarityReport};
use crate::error::{Error, Result};
use crate::fuchsian::{
    canonical_phi, connection_at, monodromy_bundle, standard_loops, Branch, FuchsianParams, MonodromyBundle, MONODROMY_TOL,
};
use crate::linalg::{rel_diff, Hermitian2, Mat2};
use crate::ode::{ode_transport, Multiply, OdeSettings, PathSpec};
use crate::scalar::Real;

/// Radius of the closed-form region around 0 and around 1.
pub const INNER_RADIUS: f64 = 0.75;
/// Closed-form region around ∞ is `|z| ≥ OUTER_RADIUS`.
pub const OUTER_RADIUS: f64 = 1.5;

/// How `Ψ(z)` is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PsiRoute<T> {
    /// Closed-form canonical solution at the given end.
    Direct(Branch),
    /// Numerical continuation from `anchor`, where the closed form at `from` is used.
    Transport { from: Branch, anchor: Complex<T> },
}

#[derive(Debug, Clone)]
pub struct Trinoid<T> {
    pub data: WeierstrassData<T>,
    pub pairings: Pairings<T>,
    pub exponents: EndExponents<T>,
    pub report: UnitarityReport<T>,
    pub gauge: GaugeConstants<T>,
    pub fuchsian: FuchsianParams<T>,
    /// Connection and monodromy matrices of `Φ⁽⁰⁾`.
    pub monodromy: MonodromyBundle<T>,
    /// Sign relating the monodromy of `DΦ⁽⁰⁾` around 1 to that of `Φ⁽⁰⁾`.
    pub sign_at_one: T,
    /// Monodromies of `DΦ⁽⁰⁾` around 0, 1, ∞.
    pub psi_monodromy: [Mat2<T>; 3],
    pub r: T,
    /// `1/√(det D · det Φ⁽⁰⁾)`
    pub kappa: Complex<T>,
    pub ode: OdeSettings,
}

impl<T: Real> Trinoid<T> {
    pub fn new(data: WeierstrassData<T>) -> Result<Self> {
        let pr = pairings(&data)?;
        let exponents = end_exponents(&data)?;
        let report = unitarizable(&data)?;
        if !report.unitarizable {
            let [d0, d1, di] = report.moduli.d();
            return Err(Error::NotUnitarizable(format!("d = ({d0}, {d1}, {di}) is outside the unitarizable region")));
        }
        let gauge = gauge_constants(&data, &pr)?;
        let fuchsian = gauge.fuchsian();
        fuchsian.check_generic()?;
        let monodromy = monodromy_bundle(&fuchsian)?;
        let r = unitarizer_r(&fuchsian)?;
        let kappa = (gauge.det_d() * fuchsian.det_phi0()).sqrt().inv();
        let mut t = Self {
            data,
            pairings: pr,
            exponents,
            report,
            gauge,
            fuchsian,
            monodromy,
            sign_at_one: T::one(),
            psi_monodromy: [Mat2::identity(); 3],
            r,
            kappa,
            ode: OdeSettings::default(),
        };
        t.sign_at_one = t.resolve_sign()?;
        let m = &t.monodromy;
        let s = Complex::new(t.sign_at_one, T::zero());
        t.psi_monodromy = [m.m0, m.m1.scale(s), m.minf.scale(s)];
        Ok(t)
    }

    /// Transports `DΦ⁽⁰⁾` around 1 and reports which sign of the closed-form monodromy it reproduces.
    fn resolve_sign(&self) -> Result<T> {
        let base = self.monodromy.basepoint;
        let start = self.gauged_phi0(base, PsiRoute::Direct(Branch::Zero))?;
        let loops = standard_loops(base)?;
        let end = ode_transport(|z| self.data.coefficient(z), &start, &loops[1], Multiply::Left, &self.ode)?;
        let m = start.inverse()? * end;
        let plus = rel_diff(&m, &self.monodromy.m1);
        let minus = rel_diff(&m, &(-self.monodromy.m1));
        let tol = T::lit(MONODROMY_TOL);
        if minus <= tol {
            Ok(-T::one())
        } else if plus <= tol {
            Ok(T::one())
        } else {
            Err(Error::OracleMismatch { what: "gauged monodromy around 1".into(), defect: plus.min(minus).as_f64() })
        }
    }

    /// Unitarized monodromies `R⁻¹ M R` of `Ψ` around 0, 1, ∞.
    pub fn unitarized_monodromy(&self) -> [Mat2<T>; 3] {
        let ri = unitarizer(self.r.recip());
        let rr = unitarizer(self.r);
        self.psi_monodromy.map(|m| ri * m * rr)
    }

    pub fn unitarity_defect(&self) -> T {
        conjugated_defect(&self.psi_monodromy, self.r)
    }

    /// Region-based choice of representation for `z`.
    pub fn route(&self, z: Complex<T>) -> PsiRoute<T> {
        let inner = T::lit(INNER_RADIUS);
        let outer = T::lit(OUTER_RADIUS);
        let d0 = z.norm();
        let d1 = (z - T::one()).norm();
        let mut best: Option<(Branch, T)> = None;
        for (b, inside, arg) in [(Branch::Zero, d0 <= inner, d0), (Branch::One, d1 <= inner, d1), (Branch::Infinity, d0 >= outer, d0.recip())] {
            if inside && best.is_none_or(|(_, a)| arg < a) {
                best = Some((b, arg));
            }
        }
        if let Some((b, _)) = best {
            return PsiRoute::Direct(b);
        }
        let gaps = [(Branch::Zero, d0 - inner), (Branch::One, d1 - inner), (Branch::Infinity, outer - d0)];
        let (from, _) = gaps.iter().fold(gaps[0], |m, g| if g.1 < m.1 { *g } else { m });
        let anchor = match from {
            Branch::Zero => z * (inner / d0),
            Branch::One => Complex::<T>::one() + (z - Complex::<T>::one()) * (inner / d1),
            Branch::Infinity => z * (outer / d0),
        };
        PsiRoute::Transport { from, anchor }
    }

    /// `Φ⁽⁰⁾(z)` on the branch of the module docs, by the given route.
    pub fn phi0(&self, z: Complex<T>, route: PsiRoute<T>) -> Result<Mat2<T>> {
        let m = &self.monodromy;
        let closed = |b: Branch, x: Complex<T>| -> Result<Mat2<T>> {
            Ok(canonical_phi(&self.fuchsian, b, x)? * connection_at(&self.fuchsian, &m.e1, &m.einf, b, x))
        };
        match route {
            PsiRoute::Direct(b) => closed(b, z),
            PsiRoute::Transport { from, anchor } => {
                let start = closed(from, anchor)?;
                if (z - anchor).norm() == T::zero() {
                    return Ok(start);
                }
                let path = PathSpec::through(&[anchor, z], &[Complex::<T>::zero(), Complex::<T>::one()])?;
                ode_transport(|x| self.fuchsian.coefficient(x), &start, &path, Multiply::Left, &self.ode)
            }
        }
    }

    fn gauged_phi0(&self, z: Complex<T>, route: PsiRoute<T>) -> Result<Mat2<T>> {
        Ok(gauge_d(&self.data, &self.gauge, z) * self.phi0(z, route)?)
    }

    /// `Ψ(z)` by the region-appropriate route.
    pub fn psi(&self, z: Complex<T>) -> Result<Mat2<T>> {
        self.psi_via(z, self.route(z))
    }

    /// `Ψ(z)` by a forced route.
    pub fn psi_via(&self, z: Complex<T>, route: PsiRoute<T>) -> Result<Mat2<T>> {
        Ok(self.gauged_phi0(z, route)? * unitarizer(self.r).scale(self.kappa))
    }

    /// `F = ΨΨ*`.
    pub fn immersion(&self, z: Complex<T>) -> Result<Hermitian2<T>> {
        self.immersion_via(z, self.route(z))
    }

    pub fn immersion_via(&self, z: Complex<T>, route: PsiRoute<T>) -> Result<Hermitian2<T>> {
        let psi = self.psi_via(z, route)?;
        Ok(Hermitian2::symmetrize(&(psi * psi.adjoint())))
    }

    /// Relative change of `F` after continuing `Ψ` once around the loop based at `base`.
    pub fn loop_defect(&self, path: &PathSpec<T>) -> Result<T> {
        let base = path.start();
        let psi = self.psi(base)?;
        let end = ode_transport(|z| self.data.coefficient(z), &psi, path, Multiply::Left, &self.ode)?;
        let f0 = psi * psi.adjoint();
        let f1 = end * end.adjoint();
        Ok(rel_diff(&f1, &f0))
    }
}

/// `Ψ(z)` for trinoid data; builds the bundle on every call.
pub fn psi_eval<T: Real>(w: &WeierstrassData<T>, z: Complex<T>) -> Result<Mat2<T>> {
    Trinoid::new(w.clone())?.psi(z)
}

/// `F(z) = Ψ(z)Ψ(z)*` for trinoid data; builds the bundle on every call.
pub fn immersion_f<T: Real>(w: &WeierstrassData<T>, z: Complex<T>) -> Result<Hermitian2<T>> {
    Trinoid::new(w.clone())?.immersion(z)
}

use crate::error::{Error, Result};
use crate::linalg::{lorentz_of, Minkowski4};
use crate::{Complex, Herm2};

/// First-derivative step relative to the local length scale.
pub const FIRST_STEP: f64 = 1e-4;
/// Second-derivative step relative to the local length scale.
pub const SECOND_STEP: f64 = 1e-3;

/// Finite-difference jet of an immersion into the hyperboloid at one point.
#[derive(Debug, Clone, Copy)]
pub struct Stencil {
    pub f: Minkowski4<f64>,
    pub fx: Minkowski4<f64>,
    pub fy: Minkowski4<f64>,
    /// `F_xx + F_yy = 4 F_zz̄`
    pub laplacian: Minkowski4<f64>,
}

impl Stencil {
    /// Central differences with step `h1` for tangents and `h2` for the Laplacian.
    pub fn sample<F>(f: F, z: Complex, h1: f64, h2: f64) -> Result<Self>
    where
        F: Fn(Complex) -> Result<Herm2>,
    {
        let at = |d: Complex| -> Result<Minkowski4<f64>> { Ok(lorentz_of(&f(z + d)?)) };
        let i = Complex::new(0.0, 1.0);
        let centre = at(Complex::new(0.0, 0.0))?;
        let fx = (at(Complex::new(h1, 0.0))? - at(Complex::new(-h1, 0.0))?).scale(0.5 / h1);
        let fy = (at(i * h1)? - at(-i * h1)?).scale(0.5 / h1);
        let xx = at(Complex::new(h2, 0.0))? + at(Complex::new(-h2, 0.0))?;
        let yy = at(i * h2)? + at(-i * h2)?;
        let laplacian = (xx + yy - centre.scale(4.0)).scale(1.0 / (h2 * h2));
        Ok(Self { f: centre, fx, fy, laplacian })
    }

    /// `2⟨F_z, F_z̄⟩`
    pub fn conformal_factor(&self) -> f64 {
        0.5 * (self.fx.dot(&self.fx) + self.fy.dot(&self.fy))
    }

    /// `|⟨F_z, F_z⟩| / ⟨F_z, F_z̄⟩`
    pub fn conformal_residual(&self) -> f64 {
        let a = self.fx.dot(&self.fx);
        let b = self.fy.dot(&self.fy);
        let c = self.fx.dot(&self.fy);
        (a - b).hypot(2.0 * c) / (a + b)
    }

    /// Unit spacelike vector orthogonal to `F`, `F_x`, `F_y`.
    pub fn normal(&self) -> Result<Minkowski4<f64>> {
        let low = |v: &Minkowski4<f64>| [-v.x0, v.x1, v.x2, v.x3];
        let rows = [low(&self.f), low(&self.fx), low(&self.fy)];
        let minor = |skip: usize| {
            let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
            let m = |r: usize, c: usize| rows[r][cols[c]];
            m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        };
        let n = Minkowski4::new(-minor(0), minor(1), -minor(2), minor(3));
        let scale: f64 = rows.iter().map(|r| r.iter().map(|x| x * x).sum::<f64>().sqrt()).product();
        let nn = n.dot(&n);
        if !(nn > 0.0) || nn.sqrt() <= 1e-10 * scale {
            return Err(Error::DegenerateStencil);
        }
        Ok(n.scale(1.0 / nn.sqrt()))
    }

    /// `|2⟨F_zz̄, N⟩| / (2⟨F_z, F_z̄⟩)`
    pub fn mean_curvature(&self) -> Result<f64> {
        let n = self.normal()?;
        Ok((0.5 * self.laplacian.dot(&n)).abs() / self.conformal_factor())
    }
}

/// `|H|` of `f` at `z` from a five-point stencil.
pub fn mean_curvature_fd<F>(f: F, z: Complex, h1: f64, h2: f64) -> Result<f64>
where
    F: Fn(Complex) -> Result<Herm2>,
{
    Stencil::sample(f, z, h1, h2)?.mean_curvature()
}

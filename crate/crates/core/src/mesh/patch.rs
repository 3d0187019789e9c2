use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fuchsian::Branch;
use crate::Complex;

/// Smallest admissible inner radius of a patch disk.
pub const MIN_EPS: f64 = 0.01;
/// Smallest admissible sample count per grid direction.
pub const MIN_SAMPLES: usize = 4;

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(Complex),
    Infinity,
}

impl SpherePoint {
    pub fn finite(self) -> Option<Complex> {
        match self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }
}

/// Direction of the sector of end `end` in the intermediate plane.
pub fn end_direction(end: Branch) -> Complex {
    let angle = match end {
        Branch::Zero => PI / 6.0,
        Branch::One => 5.0 * PI / 6.0,
        Branch::Infinity => 1.5 * PI,
    };
    Complex::from_polar(1.0, angle)
}

/// Maps the unit disk `|w̃| ≤ 1` onto the patch of the sphere around end `end`.
///
/// `w = ((1 + w̃)/(1 − w̃))^{2/3} z_end` (principal power) followed by the Möbius map
/// sending the three sector directions to 0, 1, ∞.
pub fn patch_map(end: Branch, wt: Complex) -> SpherePoint {
    let one = Complex::new(1.0, 0.0);
    let [z0, z1, zi] = [end_direction(Branch::Zero), end_direction(Branch::One), end_direction(Branch::Infinity)];
    let ratio = (one + wt) / (one - wt);
    if !ratio.is_finite() {
        return SpherePoint::Finite((z1 - zi) / (z1 - z0));
    }
    let w = ratio.powf(2.0 / 3.0) * end_direction(end);
    let den = w - zi;
    if den.norm() <= 1e-15 {
        return SpherePoint::Infinity;
    }
    SpherePoint::Finite((z1 - zi) / (z1 - z0) * (w - z0) / den)
}

/// Polar sampling grid of one end: radii from `eps` to 1, angles offset by half a step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatchConfig {
    pub end: Branch,
    pub n_r: usize,
    pub n_theta: usize,
    pub eps: f64,
}

impl PatchConfig {
    pub fn new(end: Branch, n_r: usize, n_theta: usize, eps: f64) -> Result<Self> {
        if n_r < MIN_SAMPLES || n_theta < MIN_SAMPLES {
            return Err(Error::InvalidConfig(format!("n_r = {n_r}, n_theta = {n_theta}: need at least {MIN_SAMPLES}")));
        }
        if !(MIN_EPS..1.0).contains(&eps) {
            return Err(Error::InvalidConfig(format!("eps = {eps} outside [{MIN_EPS}, 1)")));
        }
        Ok(Self { end, n_r, n_theta, eps })
    }

    pub fn len(&self) -> usize {
        self.n_r * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.eps + (1.0 - self.eps) * i as f64 / (self.n_r - 1) as f64
    }

    pub fn angle(&self, k: usize) -> f64 {
        2.0 * PI * (k as f64 + 0.5) / self.n_theta as f64
    }

    /// Disk coordinate of grid node `(i, k)`.
    pub fn node(&self, i: usize, k: usize) -> Complex {
        Complex::from_polar(self.radius(i), self.angle(k))
    }

    pub fn is_interior(&self, i: usize) -> bool {
        i > 0 && i + 1 < self.n_r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> Complex {
        Complex::new(x, y)
    }

    #[test]
    fn centres_map_to_punctures() {
        assert!(patch_map(Branch::Zero, c(0.0, 0.0)).finite().unwrap().norm() < 1e-15);
        assert!((patch_map(Branch::One, c(0.0, 0.0)).finite().unwrap() - 1.0).norm() < 1e-15);
        assert_eq!(patch_map(Branch::Infinity, c(0.0, 0.0)), SpherePoint::Infinity);
    }

    #[test]
    fn boundaries_are_shared() {
        let next = [(Branch::Zero, Branch::One), (Branch::One, Branch::Infinity), (Branch::Infinity, Branch::Zero)];
        for (a, b) in next {
            for phi in [0.3, 1.0, 2.0, 2.9] {
                let wt = Complex::from_polar(1.0, phi);
                let za = patch_map(a, wt).finite().unwrap();
                let zb = patch_map(b, wt.conj()).finite().unwrap();
                assert!((za - zb).norm() < 1e-12 * za.norm().max(1.0), "{a:?} {phi}");
            }
        }
    }

    #[test]
    fn patches_are_disjoint_inside() {
        // interior points of one patch are closer to its own puncture than the seams are
        for end in Branch::ALL {
            for wt in [c(0.2, 0.1), c(-0.5, 0.3), c(0.1, -0.7)] {
                let z = patch_map(end, wt).finite().unwrap();
                let own = match end {
                    Branch::Zero => z.norm() < 1.0,
                    Branch::One => (z - 1.0).norm() < 1.0,
                    Branch::Infinity => z.norm() > 1.0 && (z - 1.0).norm() > 1.0,
                };
                assert!(own, "{end:?} {wt} -> {z}");
            }
        }
    }

    #[test]
    fn grid_avoids_real_axis() {
        let cfg = PatchConfig::new(Branch::Zero, 5, 8, 0.05).unwrap();
        for i in 0..5 {
            for k in 0..8 {
                assert!(cfg.node(i, k).im.abs() > 1e-3);
            }
        }
        assert!(PatchConfig::new(Branch::Zero, 3, 8, 0.05).is_err());
        assert!(PatchConfig::new(Branch::Zero, 4, 8, 0.005).is_err());
    }
}

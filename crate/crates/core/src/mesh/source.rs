use crate::cmc1::{PsiRoute, Trinoid, TwonoidData};
use crate::error::Result;
use crate::fuchsian::Branch;
use crate::ode::rk4_segment;
use crate::{Complex, Herm2, Mat2C};

use super::patch::{patch_map, SpherePoint};

/// RK4 substeps used to reach stencil neighbours of a transported frame.
const LOCAL_STEPS: usize = 4;

/// A frame `Ψ` solving `Ψ' = AΨ` whose immersion `ΨΨ*` can be sampled on patches.
pub trait ImmersionSource: Sync {
    type Route: Copy + Send + Sync;

    /// Ends carrying a patch, in output order.
    fn ends(&self) -> &'static [Branch];
    /// Coordinate chart of the patch around `end`.
    fn chart(&self, end: Branch, wt: Complex) -> SpherePoint;
    fn route(&self, z: Complex) -> Self::Route;
    /// Route used when comparing patches along their common boundary.
    fn home_route(&self, end: Branch) -> Self::Route;
    /// Whether `psi_via` along this route is a closed form, smooth in `z`.
    fn closed_form(&self, route: Self::Route) -> bool;
    fn psi_via(&self, z: Complex, route: Self::Route) -> Result<Mat2C>;
    fn coefficient(&self, z: Complex) -> Mat2C;
    /// Distance to the nearest finite puncture.
    fn puncture_distance(&self, z: Complex) -> f64;
}

impl ImmersionSource for Trinoid<f64> {
    type Route = PsiRoute<f64>;

    fn ends(&self) -> &'static [Branch] {
        &Branch::ALL
    }

    fn chart(&self, end: Branch, wt: Complex) -> SpherePoint {
        patch_map(end, wt)
    }

    fn route(&self, z: Complex) -> Self::Route {
        Trinoid::route(self, z)
    }

    fn home_route(&self, end: Branch) -> Self::Route {
        PsiRoute::Direct(end)
    }

    fn closed_form(&self, route: Self::Route) -> bool {
        matches!(route, PsiRoute::Direct(_))
    }

    fn psi_via(&self, z: Complex, route: Self::Route) -> Result<Mat2C> {
        Trinoid::psi_via(self, z, route)
    }

    fn coefficient(&self, z: Complex) -> Mat2C {
        self.data.coefficient(z)
    }

    fn puncture_distance(&self, z: Complex) -> f64 {
        self.data.puncture_distance(z)
    }
}

impl ImmersionSource for TwonoidData<f64> {
    type Route = ();

    fn ends(&self) -> &'static [Branch] {
        &[Branch::Zero, Branch::Infinity]
    }

    /// `z = w̃` around 0 and `z = 1/w̃` around ∞.
    fn chart(&self, end: Branch, wt: Complex) -> SpherePoint {
        match end {
            Branch::Infinity if wt.norm() == 0.0 => SpherePoint::Infinity,
            Branch::Infinity => SpherePoint::Finite(wt.inv()),
            _ => SpherePoint::Finite(wt),
        }
    }

    fn route(&self, _: Complex) {}

    fn home_route(&self, _: Branch) {}

    fn closed_form(&self, _: ()) -> bool {
        true
    }

    fn psi_via(&self, z: Complex, _: ()) -> Result<Mat2C> {
        self.psi(z)
    }

    fn coefficient(&self, z: Complex) -> Mat2C {
        self.weierstrass().coefficient(z)
    }

    fn puncture_distance(&self, z: Complex) -> f64 {
        z.norm()
    }
}

/// `Ψ` near a fixed centre, evaluated consistently with the centre's route.
pub(crate) struct LocalFrame<'a, S: ImmersionSource> {
    src: &'a S,
    centre: Complex,
    route: S::Route,
    psi: Mat2C,
}

impl<'a, S: ImmersionSource> LocalFrame<'a, S> {
    pub(crate) fn new(src: &'a S, centre: Complex, route: S::Route) -> Result<Self> {
        let psi = src.psi_via(centre, route)?;
        Ok(Self { src, centre, route, psi })
    }

    pub(crate) fn centre_psi(&self) -> Mat2C {
        self.psi
    }

    pub(crate) fn psi(&self, z: Complex) -> Result<Mat2C> {
        if z == self.centre {
            Ok(self.psi)
        } else if self.src.closed_form(self.route) {
            self.src.psi_via(z, self.route)
        } else {
            Ok(rk4_segment(|x| self.src.coefficient(x), &self.psi, self.centre, z, LOCAL_STEPS))
        }
    }

    pub(crate) fn immersion(&self, z: Complex) -> Result<Herm2> {
        let p = self.psi(z)?;
        Ok(Herm2::symmetrize(&(p * p.adjoint())))
    }
}

//! Constant mean curvature one surfaces from Weierstrass spinor data.

mod data;
mod gauge;
mod hopf;
mod moduli;
mod trinoid;
mod twonoid;

pub use data::{
    end_exponents, exponent_from_residue, frac_half, pairings, EndExponents, ModuliPoint, Pairings, WeierstrassData,
};
pub use gauge::{gauge_b, gauge_constants, gauge_d, GaugeConstants};
pub use hopf::{hopf_and_gauss, GaussValue};
pub use moduli::{
    brute_force_r, conjugated_defect, from_moduli, normalize_ends, symmetric_family, trig_product, unitarizable,
    unitarizer, unitarizer_k, unitarizer_r, UnitarityReport,
};
pub use trinoid::{immersion_f, psi_eval, PsiRoute, Trinoid, INNER_RADIUS, OUTER_RADIUS};
pub use twonoid::{twonoid_psi, TwonoidData, TWONOID_DEGENERACY_TOL};

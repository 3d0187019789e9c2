//! Special functions: complex Gamma and the Gauss hypergeometric function.

mod contiguous;
mod gamma;
mod hyp2f1;

pub use contiguous::contiguous_reduce;
pub use gamma::{gamma_complex, rgamma};
pub(crate) use gamma::sin_pi;
pub use hyp2f1::{
    hyp2f1, hyp2f1_derivative, hyp2f1_derivative_side, hyp2f1_planned, hyp2f1_series, hyp2f1_series_with, hyp2f1_side,
    hyp2f1_with, plan, CutSide, EvalPlan, EvalSettings, HypParams, Representation,
};

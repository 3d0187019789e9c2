//! Constant mean curvature one trinoids in hyperbolic 3-space.

pub mod cmc1;
pub mod error;
pub mod fuchsian;
pub mod linalg;
pub mod mesh;
pub mod ode;
pub mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex = num_complex::Complex<f64>;
pub type Mat2C = linalg::Mat2<f64>;
pub type Herm2 = linalg::Hermitian2<f64>;
pub type LorentzVec = linalg::Minkowski4<f64>;

pub type Complex32 = num_complex::Complex<f32>;
pub type Mat2C32 = linalg::Mat2<f32>;

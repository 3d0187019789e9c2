use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure modes of the numerical pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("point is off the hyperboloid (defect {defect:e})")]
    NotOnHyperboloid { defect: f64 },
    #[error("matrix is singular (|det| = {det:e})")]
    SingularMatrix { det: f64 },
    #[error("gamma function pole near {re} + {im}i")]
    GammaPole { re: f64, im: f64 },
    #[error("hypergeometric parameter c = {re} + {im}i is at a nonpositive integer")]
    DegenerateC { re: f64, im: f64 },
    #[error("hypergeometric series did not converge within {terms} terms")]
    SeriesDiverged { terms: usize },
    #[error("resonant parameters: {0}")]
    ResonantParameters(String),
    #[error("argument lies on the branch cut [1, inf); pass an explicit side")]
    OnBranchCut,
    #[error("integrator step fell below {min_step:e} at t = {t}")]
    StepUnderflow { min_step: f64, t: f64 },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("degenerate data: {0}")]
    DegenerateData(String),
    #[error("closed-form and transported monodromy disagree ({what}: defect {defect:e})")]
    OracleMismatch { what: String, defect: f64 },
    #[error("end exponent routes disagree at end {end} ({defect:e})")]
    MismatchedExponents { end: &'static str, defect: f64 },
    #[error("moduli and trigonometric criteria disagree (moduli margin {margin:e}, trig product {trig:e})")]
    InconsistentCriteria { margin: f64, trig: f64 },
    #[error("monodromy is not unitarizable: {0}")]
    NotUnitarizable(String),
    #[error("twonoid exponent lambda = {lambda} is half-integer; supply a Hermitian A")]
    HalfIntegerLambda { lambda: f64 },
    #[error("Gauss map has a pole (Q = 0)")]
    GaussMapPole,
    #[error("not representable: {0}")]
    NotRepresentable(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("degenerate stencil: tangent frame is rank deficient")]
    DegenerateStencil,
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

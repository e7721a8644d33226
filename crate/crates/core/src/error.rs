use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum G2Error {
    #[error("degree overflow: {0} exceeds the ambient dimension")]
    DegreeOverflow(usize),
    #[error("interior product of a 0-form")]
    DegreeUnderflow,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("expected {expected} coefficients, got {got}")]
    InvalidLength { expected: usize, got: usize },
    #[error("3-form is not positive (det B = {det_b:e})")]
    NotPositive { det_b: f64 },
    #[error("3-form is nearly degenerate (|det B| = {det_b:e})")]
    NearDegenerate { det_b: f64 },
    #[error("metric is not positive definite")]
    NotPositiveDefinite,
    #[error("normalisation root is irrational; exact mode unavailable at this structure")]
    IrrationalRoot,
    #[error("form has a type-7 component of size {norm:e}")]
    HasSevenComponent { norm: f64 },
    #[error("finite-difference step {step:e} leaves the positive cone")]
    StepLeavesPositiveCone { step: f64 },
    #[error("Hessian is degenerate (min |eigenvalue| = {min_eigenvalue:e})")]
    DegenerateHessian { min_eigenvalue: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("curvature periods are not in 2πℤ (deviation {deviation:e})")]
    NonIntegralCurvature { deviation: f64 },
    #[error("invalid subtorus: {0}")]
    InvalidSubtorus(String),
    #[error("Newton iteration diverged after {iterations} steps (residual {residual:e})")]
    NewtonDiverged { iterations: usize, residual: f64 },
    #[error("Newton iteration hit the iteration cap {iterations} (residual {residual:e})")]
    MaxIterations { iterations: usize, residual: f64 },
    #[error("linearisation is singular")]
    SingularLinearization,
    #[error("family leaves the moduli space (defect {defect:e} at parameter {param:?})")]
    FamilyLeavesModuli { defect: f64, param: [f64; 2] },
}

pub type Result<T> = std::result::Result<T, G2Error>;

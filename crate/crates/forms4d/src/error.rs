use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("{op}: expected a pure grade-{expected} argument")]
    GradeMismatch { op: &'static str, expected: usize },

    #[error("multivector is numerically singular (rcond = {rcond:.3e})")]
    SingularMultivector { rcond: f64 },

    #[error("bivector does not square to -1 (|I*I + 1| = {residual:.3e})")]
    NotUnitBivector { residual: f64 },

    #[error("field value is not a spin-group element at {point:?} (residual {residual:.3e})")]
    NotSpin { point: [f64; 4], residual: f64 },

    #[error("invalid chart box: {0}")]
    BadChartBox(String),

    #[error("point {point:?} is within {margin} of the chart boundary; finite-difference stencil would leave the box")]
    OutsideChart { point: [f64; 4], margin: f64 },

    #[error("unknown catalog metric `{0}`")]
    UnknownMetric(String),

    #[error("metric axiom violated at grid node {point:?}: {detail}")]
    AxiomViolation { point: [f64; 4], detail: String },

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("coordinate change has non-positive Jacobian (det = {det:.3e})")]
    NonpositiveJacobian { det: f64 },

    #[error("momentum is off shell: p*p = {p_squared:.12} but m*m = {m_squared:.12}")]
    OffShell { p_squared: f64, m_squared: f64 },

    #[error("plane-wave construction requires m > 0")]
    ZeroMass,

    #[error("plane-wave system has a trivial null space (smallest singular value {sigma_min:.3e}); this indicates an internal inconsistency")]
    NoNullSpace { sigma_min: f64 },

    #[error("contorsion is not metric compatible (max |K_nml + K_lmn| = {residual:.3e})")]
    IncompatibleContorsion { residual: f64 },

    #[error("torsion is not antisymmetric in its lower index pair (residual {residual:.3e})")]
    BadTorsion { residual: f64 },

    #[error("gauge potential is not of pure-gauge form (flatness residual {residual:.3e} at {point:?})")]
    NotPureGauge { point: [f64; 4], residual: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the arithmetic, geometry, lattice and counting layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,

    #[error("division by zero")]
    DivisionByZero,

    #[error("bad specialization: denominator vanishes at the assignment")]
    BadSpecialization,

    #[error("bad prime {p}: it divides a coefficient denominator")]
    BadPrime { p: u64 },

    #[error("unassigned variable `{0}` during evaluation")]
    Unassigned(String),

    #[error("quadratic extensions do not match: {0} vs {1}")]
    ExtensionMismatch(String, String),

    #[error("chart mismatch: {0}")]
    ChartMismatch(String),

    #[error("map not defined on a dense open set: {0}")]
    Undefined(String),

    #[error("point is not on the curve")]
    OffCurve,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("out of contract: {0}")]
    Contract(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("too few valid samples: {found} of {wanted}")]
    TooFewSamples { found: usize, wanted: usize },

    #[error("dependent pullbacks: d = 0")]
    DependentPullbacks,

    #[error("invalid configuration: {0}")]
    Configuration(String),

    #[error("forbidden parameter: {0}")]
    ForbiddenParameter(String),

    #[error("unknown entry `{0}`")]
    UnknownEntry(String),

    #[error("manifest error: {0}")]
    Manifest(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised by series arithmetic and the operators built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),

    #[error("truncation degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("cannot truncate a degree-{from} series to the finer degree {to}")]
    TruncateUp { from: u32, to: u32 },

    #[error("exponent vector has {got} entries, expected {expected}")]
    ExponentLength { got: usize, expected: usize },

    #[error("map must have at least one component")]
    EmptyMap,

    #[error("map has {components} components but {nvars} variables")]
    ArityMismatch { components: usize, nvars: usize },

    #[error("component {0} of the inner map has a constant term; composition is undefined")]
    ConstantTerm(usize),

    #[error("map is not tangent to the identity: {0}")]
    NotInF1(String),

    #[error("vector field has a nonzero constant term")]
    ConstantVectorField,

    #[error("exact exponential needs order >= 2 or a nilpotent linear part; use the numeric mode")]
    NotExact,

    #[error("multiplier must have order >= 1")]
    AugmentationOrder,

    #[error("matrix shape mismatch: {0}")]
    MatrixShape(String),

    #[error("exponential series still nonzero after {0} terms")]
    NonTerminating(usize),

    #[error("numeric exponential did not converge: term norm {norm:e} after {kmax} terms")]
    NonConvergence { kmax: usize, norm: f64 },

    #[error("map is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("truncation degree {have} is too small, need at least {need}")]
    InsufficientDegree { have: u32, need: u32 },

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("invalid JSON: {0}")]
    Json(String),
}

pub type Result<T, E = JetError> = std::result::Result<T, E>;

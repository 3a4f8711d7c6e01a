//! Crate-wide error type.

use thiserror::Error;

/// Axiom residual report attached to validation failures (mirror of
/// [`crate::table::AxiomReport`] fields, kept as `f64` so the error type is
/// not generic).
#[derive(Debug, Clone)]
pub struct AxiomFailure {
    pub probability: f64,
    pub commutativity: f64,
    pub identity: f64,
    pub support: f64,
    pub associativity: f64,
    pub tolerance: f64,
}

impl std::fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "probability={:.3e} commutativity={:.3e} identity={:.3e} support={:.3e} associativity={:.3e} (tol={:.3e})",
            self.probability,
            self.commutativity,
            self.identity,
            self.support,
            self.associativity,
            self.tolerance
        )
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid structure data in field `{field}`: {message}")]
    InvalidStructure { field: String, message: String },

    #[error("hypergroup axiom violation beyond tolerance: {0}")]
    AxiomViolation(AxiomFailure),

    #[error("Haar invariance system is singular or inconsistent: {0}")]
    SingularInvariance(String),

    #[error("elements do not share a base hypergroup")]
    BaseMismatch,

    #[error("index {index} out of range for hypergroup of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("character table does not belong to this hypergroup")]
    DualMismatch,

    #[error("joint diagonalization failed after {retries} retries (max residual {residual:.3e})")]
    Diagonalization { retries: usize, residual: f64 },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("linearization coefficient g({m},{n};{k}) = {value:.3e} is negative beyond tolerance")]
    NegativeLinearization {
        m: usize,
        n: usize,
        k: usize,
        value: f64,
    },

    #[error("quadrature rule is exact only to degree {available}, need {needed}")]
    InsufficientQuadrature { needed: usize, available: usize },

    #[error("unknown builtin group `{0}`")]
    UnknownGroup(String),

    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),

    #[error("family has no character evaluator for this request: {0}")]
    NoCharacterEvaluator(String),

    #[error("empty dual subset")]
    EmptyDualSubset,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error in field `{field}`: {message}")]
    Parse { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

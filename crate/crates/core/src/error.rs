use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rank {0} is out of range (supported: 1..=26)")]
    RankOutOfRange(usize),
    #[error("invalid letter {ch:?} for rank {rank}")]
    InvalidLetter { ch: char, rank: usize },
    #[error("generator index {index} out of range for rank {rank}")]
    InvalidGenerator { index: usize, rank: usize },
    #[error("pattern must be nonempty")]
    EmptyPattern,
    #[error("word {0} is self-overlapping")]
    SelfOverlapping(String),
    #[error("not alternating at {word}: f(w) = {value}, f(w^-1) = {inverse_value}")]
    NotAlternating {
        word: String,
        value: f64,
        inverse_value: f64,
    },
    #[error("conflicting coefficients for {word}: {first} vs {second}")]
    CoefficientConflict {
        word: String,
        first: f64,
        second: f64,
    },
    #[error("family is not independent: {0} and {1} overlap")]
    NotIndependent(String, String),
    #[error("set is not symmetric: {0} present without its inverse")]
    NotSymmetric(String),
    #[error("decomposition axiom violated: {0}")]
    AxiomViolation(String),
    #[error("certified lower bound {lower} exceeds theoretical upper bound {upper} ({provenance})")]
    BoundViolation {
        lower: f64,
        upper: f64,
        provenance: String,
    },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced by parsing, validation and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("count mismatch: header declares {declared} items, found {found}")]
    CountMismatch { declared: usize, found: usize },

    #[error("{what} = {value} exceeds the limit {limit}")]
    Limit {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("work budget exceeded: {needed} cells requested, budget is {budget}")]
    Budget { needed: u128, budget: u128 },

    #[error("instance too large for exhaustive search: n = {n}, limit {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    Dimension { rows: usize, cols: usize },

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),
}

impl Error {
    /// Whether this error belongs to the "resource limit" class
    /// (as opposed to malformed input).
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::Limit { .. } | Error::Budget { .. } | Error::SizeLimit { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A vertex, dimension or family parameter outside its admissible range.
    #[error("out of range: {0}")]
    Range(String),

    /// A malformed graph (loops, duplicate edges, bad endpoints).
    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("capacity exceeded: {what} needs {needed}, cap is {cap}")]
    Capacity {
        what: &'static str,
        needed: u64,
        cap: u64,
    },

    /// The requested query needs a backend the group was not built with.
    #[error("backend cannot answer this query: {0}")]
    Backend(String),

    /// A matrix sent some overline vector outside the overline family.
    #[error("matrix does not permute the overline family: {0}")]
    NotPermutation(String),

    /// Closed-form classification exists only for the A, D and E families.
    #[error("operation needs a graph of family {0}")]
    UnsupportedFamily(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A computed quantity contradicts an exact identity (e.g. a kernel
    /// order that is not an integer). Always a bug.
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

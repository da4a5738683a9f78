use thiserror::Error;

/// Errors raised while parsing an edge-list document.
///
/// Every variant names the 1-based line it was found on, so corpus bugs can
/// be located without re-reading the whole file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected vertex count, found {found:?}")]
    BadVertexCount { line: usize, found: String },
    #[error("line {line}: malformed edge line {found:?} (expected \"u v\")")]
    MalformedLine { line: usize, found: String },
    #[error("line {line}: endpoint {vertex} outside [1, {k}]")]
    EndpointOutOfRange { line: usize, vertex: i64, k: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: u16 },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: u16, v: u16 },
    #[error("missing vertex count line")]
    MissingVertexCount,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("unknown graph family {0:?}")]
    UnknownFamily(String),
    #[error("family {family}:{k} is not valid: {reason}")]
    BadFamilySize {
        family: String,
        k: i64,
        reason: &'static str,
    },
    #[error("graph has {k} vertices, limit is {max} (raise the limit to override)")]
    VertexLimit { k: usize, max: usize },
    #[error("vertex counts differ: {a} vs {b}")]
    VertexCountMismatch { a: usize, b: usize },
    #[error("expected an edge {{{u}, {v}}} of the graph")]
    NoSuchEdge { u: u16, v: u16 },
    #[error("graphs are not in a subgraph relation")]
    NotASubgraph,

    #[error("point dimensions differ: {a} vs {b}")]
    DimensionMismatch { a: usize, b: usize },
    #[error("operation requires two distinct points")]
    EqualPoints,
    #[error("configuration has {got} points but the graph has {expected} vertices")]
    ConfigSizeMismatch { expected: usize, got: usize },

    #[error("work of size {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("sieve bound {m} exceeds prime cap {cap}")]
    PrimeCapExceeded { m: u64, cap: u64 },
    #[error("tail target {target:e} unreachable under prime cap {cap}: {reason}")]
    TailUnreachable {
        target: f64,
        cap: u64,
        reason: String,
    },

    #[error("conditioning product is exactly zero")]
    ZeroDenominator,
    #[error("no conditioning successes among {trials} trials")]
    NoConditioningSuccesses { trials: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

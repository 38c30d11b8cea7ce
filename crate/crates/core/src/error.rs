use thiserror::Error;

/// Errors raised by the polydeterminant library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("matrix is numerically singular (|det| = {det_modulus:e})")]
    Singular { det_modulus: f64 },

    #[error("{op} supports n <= {max}, got n = {n}")]
    GuardExceeded {
        op: &'static str,
        n: usize,
        max: usize,
    },

    #[error("{op} requires n >= {min}, got n = {n}")]
    TooSmall {
        op: &'static str,
        n: usize,
        min: usize,
    },

    #[error("tuple of {count} matrices given for dimension {n}; a polydeterminant needs exactly n arguments")]
    TupleArity { n: usize, count: usize },

    #[error("unknown engine `{0}`")]
    UnknownEngine(String),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid partition vector {0:?}")]
    InvalidPartition(Vec<usize>),

    #[error("parts {parts:?} do not sum to {total}")]
    PartsSumMismatch { total: usize, parts: Vec<usize> },

    #[error("non-finite entry in input")]
    NonFinite,

    #[error("matrix is not unitary (max |U U^dagger - 1| = {deviation:e})")]
    NonUnitary { deviation: f64 },

    #[error("indeterminate ratio: reference value {modulus:e} is below the magnitude floor")]
    IndeterminateRatio { modulus: f64 },

    #[error("label `{0}` is not bound to a matrix")]
    UnboundLabel(String),

    #[error("expected {expected} labels, got {found}")]
    LabelCount { expected: usize, found: usize },

    #[error("length mismatch: expected {expected} components, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("expected {expected} multiplets, got {found}")]
    MultipletCount { expected: usize, found: usize },

    #[error("degenerate sample set: {0}")]
    Degenerate(String),

    #[error("Lorentz index variance mismatch: {0}")]
    VarianceMismatch(String),

    #[error("Lorentz rank mismatch: expected rank {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

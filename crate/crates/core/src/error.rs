use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("empty matrix has no kernel structure")]
    EmptyMatrix,
    #[error("row sums are not all zero mod m; the constant vector is not in the kernel")]
    ConstantsNotInKernel,
    #[error("{cardinality} solutions exceed the enumeration cap {cap}")]
    TooLargeToEnumerate { cardinality: BigUint, cap: usize },
    #[error("smith normal form verification failed: {0}")]
    SnfVerification(String),

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("uniformities differ: {0} vs {1}")]
    UniformityMismatch(usize, usize),
    #[error("hypergraph is disconnected")]
    Disconnected,
    #[error("hypergraph is trivial (a single vertex)")]
    Trivial,
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("at least {needed} inputs required, got {got}")]
    TooFewInputs { needed: usize, got: usize },

    #[error("coloring check failed: {0}")]
    InvalidColoring(String),
    #[error("{what}: search space {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: BigUint, cap: usize },
    #[error("power iteration did not converge in {iterations} iterations (gap {gap:e})")]
    NoConvergence { iterations: usize, gap: f64 },
    #[error("exponent vector {index} is not in the kernel or has nonzero first entry")]
    BadExponents { index: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

use thiserror::Error;

/// Errors raised by the library. Vertex indices in messages are 0-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {index} out of range for a quiver on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("matrix is not skew-symmetric at ({i}, {j})")]
    NotSkewSymmetric { i: usize, j: usize },

    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },

    #[error("diagonal entry ({i}, {i}) is {value}, expected 2")]
    BadDiagonal { i: usize, value: i64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("vertex subset is empty")]
    EmptySubset,

    #[error("duplicate vertex {0} in subset")]
    DuplicateVertex(usize),

    #[error("matrix is not a quasi-Cartan companion of the quiver (first mismatch at ({i}, {j}))")]
    NotCompanion { i: usize, j: usize },

    #[error("quiver has {arrows} joined pairs, search supports at most {max}")]
    TooManyArrows { arrows: usize, max: usize },

    #[error("quadratic form is not positive semi-definite")]
    NotPositiveSemidefinite,

    #[error("vector {index} has self-pairing {value}, expected 2")]
    BadNorm { index: usize, value: String },

    #[error("vectors are linearly dependent (vector {0} lies in the span of the previous ones)")]
    LinearlyDependent(usize),

    #[error("pairing of vectors {i} and {j} is not an integer")]
    NonIntegralPairing { i: usize, j: usize },

    #[error("vector {0} has non-integral coordinates")]
    NonIntegralVector(usize),

    #[error("vector {index} has {len} coordinates, ambient dimension is {dim}")]
    BadVectorLength { index: usize, len: usize, dim: usize },

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("arc {arc} out of range for a triangulation with {n} arcs")]
    ArcOutOfRange { arc: usize, n: usize },

    #[error("mutation class exceeded the cap of {cap} members before resolving")]
    CapExceeded { cap: usize },

    #[error("quiver is not mutation-finite")]
    NotMutationFinite,

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised by constructors, parsers and checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("diagonal entry {index} is {value}, expected 1")]
    NotUnitDiagonal { index: usize, value: String },

    #[error("matrix is not positive semidefinite (pivot {pivot} is {value})")]
    NotPsd { pivot: usize, value: String },

    #[error("symmetric matrix has a zero diagonal but a nonzero off-diagonal block; no LDL^T with 1x1 pivots exists")]
    NoDiagonalPivot,

    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),

    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("graph is not strongly regular: {0}")]
    NotStronglyRegular(String),

    #[error("irrational eigenvalues: discriminant {0} is not a perfect square")]
    IrrationalEigenvalues(i64),

    #[error("not a regular tetrahedron: {0}")]
    NotTetrahedron(String),

    #[error("configuration already contains the antipodal pair ({0}, {1})")]
    AntipodePresent(usize, usize),

    #[error("lattice Gram matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("permutation {0} does not preserve the Gram matrix")]
    NotAnAutomorphism(usize),

    #[error("points {0} and {1} coincide; energy is undefined")]
    CoincidentPoints(usize, usize),

    #[error("ambiguous shell clustering at point {point}: inner products {a} and {b} are closer than 10*tol but farther than tol")]
    AmbiguousShells { point: usize, a: f64, b: f64 },

    #[error("cutoff {cutoff} is smaller than the minimal inter-point distance; no shell to check")]
    CutoffTooSmall { cutoff: String },

    #[error("configuration has irrational inner products and only exists in float mode: {0}")]
    FloatOnly(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

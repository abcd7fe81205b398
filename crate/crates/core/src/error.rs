use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry count {got} does not match dim² = {expected}")]
    EntryCount { expected: usize, got: usize },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is not Hermitian (max |m_ij - conj(m_ji)| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("trace deviates from 1 (trace = {trace})")]
    TraceDeviation { trace: f64 },

    #[error("Hermitian eigensolver did not converge (dim {dim})")]
    EigensolverFailure { dim: usize },

    #[error("scalar function undefined at eigenvalue {eigenvalue:e}")]
    FunctionUndefinedAtEigenvalue { eigenvalue: f64 },

    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("distributions are indexed differently: {left} vs {right} entries")]
    IndexMismatch { left: usize, right: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("+inf and -inf met in one sum")]
    IllFormedInfinitySum,

    #[error("divergence function {name} returned a non-finite value at t = {t:e}")]
    NonFiniteEvaluation { name: String, t: f64 },

    #[error("invalid divergence function {name}: {reason}")]
    InvalidDivergenceFunction { name: String, reason: String },

    #[error("unknown divergence name: {0}")]
    UnknownName(String),

    #[error("alpha out of range: {0} (must be positive and different from 1)")]
    AlphaOutOfRange(f64),

    #[error("negative power-divergence value {0:e}")]
    NegativeDivergenceValue(f64),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("not an orthogonal projection (idempotency {idempotency:e}, hermiticity {hermiticity:e})")]
    NotAProjection { idempotency: f64, hermiticity: f64 },

    #[error("invalid priors ({pi0}, {pi1})")]
    InvalidPriors { pi0: f64, pi1: f64 },

    #[error("need at least two states, got {0}")]
    FewerThanTwoStates(usize),

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

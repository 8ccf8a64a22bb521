use thiserror::Error;

/// Errors raised by the spin-space kernel and the physics modules built on it.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: String, got: String },

    #[error("entry count {got} does not match shape {rows}x{cols}")]
    Shape {
        rows: usize,
        cols: usize,
        got: usize,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("coupling must be finite and nonnegative (got {0})")]
    InvalidCoupling(f64),

    #[error("parameter `{name}` must be finite and nonnegative (got {value})")]
    NegativeParameter { name: &'static str, value: f64 },

    #[error("beam splitter is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("spin correlation undefined: no events with one electron per lead (p_56 = {0:e})")]
    NoAntibunchedEvents(f64),

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("invalid sweep configuration: {0}")]
    InvalidSweep(String),

    #[error("eigenvalue solver did not converge after {0} sweeps")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// Variants split into two families: malformed input ([`Error::Parse`]) and
/// well-formed input that violates a mathematical precondition (everything
/// else). The CLI maps the first family to exit code 3 and the second to 2.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("invalid Schatten index: {0}")]
    InvalidP(String),
    #[error("matrix is not positive semidefinite (eigenvalue {0:.3e})")]
    NotPsd(f64),
    #[error("map is not Hermiticity preserving")]
    NotHp,
    #[error("channel is not CPTP: {0}")]
    NotCptp(String),
    #[error("sub-operations do not sum to a trace-preserving map: {0}")]
    NotTpSum(String),
    #[error("bad mixing weights: {0}")]
    BadWeights(String),
    #[error("not a density operator: {0}")]
    NotDensityOperator(String),
    #[error("operator is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("vector is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("covariance matrix is not symmetric (deviation {0:.3e})")]
    NotSymmetric(f64),
    #[error("covariance matrix is not positive definite (eigenvalue {0:.3e})")]
    NotPositiveDefinite(f64),
    #[error("mode index {index} out of range for {n_modes} modes")]
    BadIndex { index: usize, n_modes: usize },
    #[error("expected a two-mode covariance matrix, got {0} modes")]
    NotTwoMode(usize),
    #[error("covariance matrix is not a valid quantum state (min symplectic eigenvalue {0})")]
    InvalidState(f64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid block specification: {0}")]
    InvalidBlocks(String),
    #[error("invalid wavefunction parameters: {0}")]
    InvalidWavefunction(String),
    #[error("internal numerical error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by unreadable input rather than bad values.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

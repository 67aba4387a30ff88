use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("unsupported matrix dimension {0} (expected 2, 4 or 8)")]
    UnsupportedDimension(usize),

    #[error("matrix is not Hermitian (max |A - A^H| = {0:e})")]
    NotHermitian(f64),

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("eigenvalue {0:e} is negative beyond tolerance")]
    NegativeEigenvalue(f64),

    #[error("non-finite matrix or amplitude entry")]
    NonFinite,

    #[error("matrix is not a normalized density matrix (trace = {0})")]
    NotNormalized(f64),

    #[error("vanishing amplitude at this configuration")]
    VanishingAmplitude,

    #[error("invalid qubit selection: {0}")]
    InvalidQubits(String),

    #[error("qubit label {0} out of range (expected 1, 2 or 3)")]
    QubitLabel(u8),

    #[error("{name} = {value} outside its domain {domain}")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid couplings: {0}")]
    Couplings(String),

    #[error("{quantity} = {value:e} violates its bound beyond rounding tolerance")]
    BoundViolation { quantity: &'static str, value: f64 },

    #[error("invalid scan request: {0}")]
    Request(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// I/O failures are reported separately from domain errors by the CLI.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("invalid registry: {0}")]
    Registry(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("Z-form input rejected: {0}")]
    ZFormRejected(String),
    #[error("Z-form data cannot be resolved to Q-form: {0}")]
    NotResolvable(String),
    #[error("label registry incomplete: {0}")]
    RegistryIncomplete(String),
    #[error("oracle undefined: {0}")]
    OracleUndefined(String),
    #[error("epsilon not monomial with given data")]
    NotMonomial,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("p is not invertible in {0}")]
    PNotInvertible(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI's JSON error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division-by-zero",
            Error::InvalidContext(_) => "invalid-context",
            Error::Registry(_) => "invalid-registry",
            Error::UnknownLabel(_) => "unknown-label",
            Error::ZFormRejected(_) => "z-form-rejected",
            Error::NotResolvable(_) => "not-resolvable",
            Error::RegistryIncomplete(_) => "registry-incomplete",
            Error::OracleUndefined(_) => "oracle-undefined",
            Error::NotMonomial => "not-monomial",
            Error::Invalid(_) => "invalid-input",
            Error::PNotInvertible(_) => "p-not-invertible",
            Error::UnsupportedRing(_) => "unsupported-ring",
            Error::InsufficientPrecision(_) => "insufficient-precision",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors surfaced by the library. Each variant has a stable short code used
/// by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("iota is not an involution: {0}")]
    NotInvolution(String),
    #[error("iota has fixed points: {0:?}")]
    IotaFixedPoints(Vec<usize>),
    #[error("graph is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("corrupted graph: {0}")]
    Corrupted(String),
    #[error("invalid selector: {0}")]
    InvalidSelector(String),
    #[error("selector mismatch: {0}")]
    SelectorMismatch(String),
    #[error("truncated request: {0}")]
    Truncated(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("basis mismatch: genus {0} vs {1}")]
    BasisMismatch(usize, usize),
    #[error("arity mismatch: expected {expected} inputs, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("degree error: {0}")]
    Degree(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "E_MALFORMED",
            Error::NotInvolution(_) => "E_NOT_INVOLUTION",
            Error::IotaFixedPoints(_) => "E_IOTA_FIXED_POINTS",
            Error::Disconnected(_) => "E_DISCONNECTED",
            Error::Corrupted(_) => "E_CORRUPTED",
            Error::InvalidSelector(_) => "E_SELECTOR",
            Error::SelectorMismatch(_) => "E_SELECTOR_MISMATCH",
            Error::Truncated(_) => "E_TRUNCATED",
            Error::UnknownSymbol(_) => "E_SYMBOL",
            Error::BasisMismatch(..) => "E_BASIS",
            Error::Arity { .. } => "E_ARITY",
            Error::Degree(_) => "E_DEGREE",
            Error::Io(_) => "E_IO",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

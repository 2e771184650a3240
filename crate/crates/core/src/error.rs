use thiserror::Error;

/// Errors produced by the code constructions, oracles and bound evaluators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("code dimension {k} exceeds the enumeration cap {cap}")]
    DimensionTooLarge { k: usize, cap: usize },

    #[error("the code has dimension 0; minimum distance is undefined")]
    ZeroCode,

    #[error("zero codeword has no support profile")]
    ZeroCodeword,

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("symbol set is not an information set of the code")]
    NotAnInformationSet,

    #[error("unknown code name `{0}`")]
    UnknownCode(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("no root found: {0}")]
    RootNotFound(String),

    #[error("iteration did not converge: {0}")]
    NoConvergence(String),

    #[error("could not draw a simple graph after {0} attempts")]
    RetryExhausted(usize),

    #[error("slack alpha={alpha} must exceed lambda2/(2 sigma delta)={min}")]
    AlphaTooSmall { alpha: f64, min: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for violations of an operation's precondition on otherwise
    /// well-formed input (enumeration caps, degenerate codes, unmet
    /// hypotheses). The command-line front end maps these to their own exit
    /// status.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::DimensionTooLarge { .. }
                | Error::ZeroCode
                | Error::ZeroCodeword
                | Error::NotAnInformationSet
                | Error::AlphaTooSmall { .. }
                | Error::RetryExhausted(_)
                | Error::RootNotFound(_)
                | Error::NoConvergence(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant to an exit code via
/// [`Error::is_input_error`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("ambient mismatch: {0}")]
    Mismatch(String),

    #[error("classification refused: {0}")]
    Classification(String),

    #[error("impossible configuration: {0}")]
    Impossible(String),

    #[error("(T - 1)^3 != 0; replace T by a unipotent power before taking the logarithm")]
    NeedsBaseChange,

    #[error("not a type IV nilpotent: {0}")]
    NotTypeIv(String),

    #[error("inconsistent samples: {0}")]
    InconsistentSamples(String),

    #[error("extrapolation did not converge (residual {residual:.3e} > {threshold:.3e}): {detail}")]
    NoConvergence {
        residual: f64,
        threshold: f64,
        detail: String,
    },

    #[error("point lies outside the tube chart: {0}")]
    OutsideChart(String),

    #[error("w(F) = {0} is not in {{0, 1, 2}}")]
    NotBoundaryPair(i64),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by unusable input (exit code 2), false for a
    /// violated mathematical hypothesis (exit code 1).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Malformed(_)
                | Error::Schema { .. }
                | Error::Unsupported(_)
                | Error::Mismatch(_)
                | Error::OutsideChart(_)
                | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

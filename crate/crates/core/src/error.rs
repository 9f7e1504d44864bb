use crate::cavity::CavityModel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A value violated a domain invariant (sign, bound, finiteness).
    #[error("invalid {field}: {message}")]
    Validation {
        field: &'static str,
        message: String,
    },

    /// The input stream does not follow the corpus schema.
    #[error("schema error: {0}")]
    Schema(String),

    /// A data row could not be read; `line` is 1-based in the input stream.
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },

    #[error("insufficient data: need at least {needed} usable rows, found {found}")]
    InsufficientData { needed: usize, found: usize },

    #[error("model `{0}` has no free local-field law and cannot be fitted")]
    InvalidModel(CavityModel),

    #[error("weighted RSS tie between models ({rss:e}); no winner")]
    Tie { rss: f64 },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(field: &'static str, message: impl Into<String>) -> Self {
        Error::Validation {
            field,
            message: message.into(),
        }
    }
}

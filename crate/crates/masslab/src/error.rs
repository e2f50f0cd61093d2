use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum MasslabError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("sample length {actual} does not match grid size {expected}")]
    Shape { expected: usize, actual: usize },

    #[error("model mismatch: {0}")]
    Model(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("accuracy target missed for {what}: residual {residual:.3e} exceeds {tolerance:.3e}")]
    Accuracy {
        what: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("weight function vanishes on the domain")]
    DegenerateWeight,

    #[error("inconsistent evidence: {0}")]
    Diagnostic(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, MasslabError>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NoahError {
    #[error("invalid fitness")]
    InvalidFitness,
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam {
        name: &'static str,
        reason: &'static str,
    },
    #[error("index {index} out of range for {len} values")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("an active colony already occupies this location")]
    ColonyExists,
    #[error("no candidates")]
    NoCandidates,
    #[error("grid: {0}")]
    Grid(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl NoahError {
    pub fn invalid_param(name: &'static str, reason: &'static str) -> Self {
        Self::InvalidParam { name, reason }
    }

    /// Configuration problems are reported before any work starts; everything
    /// else is a runtime failure.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Self::Config(_) | Self::InvalidParam { .. } | Self::Dimension { .. } | Self::Grid(_)
        )
    }
}

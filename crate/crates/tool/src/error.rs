use thiserror::Error;

#[derive(Debug, Error)]
pub enum ToolError {
    #[error(transparent)]
    Core(#[from] omega_core::Error),
    #[error("spec file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{field}: {value:?} is not a decimal integer")]
    BadInteger { field: String, value: String },
    #[error("window of {size} vertices exceeds the materialization budget of {budget}")]
    WindowTooLarge { size: String, budget: u64 },
    #[error("{0}")]
    Usage(String),
}

impl ToolError {
    /// Process exit status: 2 for usage errors, 3 for exhausted budgets,
    /// 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            ToolError::Usage(_) | ToolError::BadInteger { .. } => 2,
            ToolError::Core(omega_core::Error::BudgetExceeded { .. }) | ToolError::WindowTooLarge { .. } => 3,
            _ => 1,
        }
    }
}

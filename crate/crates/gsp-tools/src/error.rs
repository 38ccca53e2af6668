//! Tool-level errors and their process exit codes.

use gsp_core::CoreError;

/// Exit code for invalid input (bad arguments, malformed JSON, domain
/// errors raised by the computational core).
pub const EXIT_INVALID: i32 = 2;
/// Exit code for a verification suite with at least one failed check.
pub const EXIT_SUITE_FAILURE: i32 = 3;
/// Exit code for an enumeration that exceeds the configured budget.
pub const EXIT_BUDGET: i32 = 4;

/// Errors surfaced to the command-line layer.
#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    /// Malformed or inconsistent input (arguments, JSON, domain violations).
    #[error("invalid input: {0}")]
    Invalid(String),
    /// The requested computation exceeds the enumeration budget.
    #[error("budget exceeded: estimated 2^{estimate_log2} elements, budget 2^{budget_log2}")]
    Budget {
        estimate_log2: u32,
        budget_log2: u32,
    },
    /// Input/output failure (file access, serialization).
    #[error("i/o error: {0}")]
    Io(String),
}

impl ToolError {
    /// Convenience constructor for invalid-input errors.
    pub fn invalid(msg: impl Into<String>) -> Self {
        ToolError::Invalid(msg.into())
    }

    /// The process exit code mandated for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            ToolError::Budget { .. } => EXIT_BUDGET,
            ToolError::Invalid(_) | ToolError::Io(_) => EXIT_INVALID,
        }
    }
}

impl From<CoreError> for ToolError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::BudgetExceeded {
                estimate_log2,
                budget_log2,
            } => ToolError::Budget {
                estimate_log2,
                budget_log2,
            },
            other => ToolError::Invalid(other.to_string()),
        }
    }
}

impl From<std::io::Error> for ToolError {
    fn from(e: std::io::Error) -> Self {
        ToolError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for ToolError {
    fn from(e: serde_json::Error) -> Self {
        ToolError::Invalid(format!("malformed JSON: {e}"))
    }
}

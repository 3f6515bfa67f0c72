//! Execution traces: everything observable about one deterministic run.

use crate::diag::Diagnostic;
use crate::env::Env;
use serde::{Serialize, Serializer};

/// The complete observable outcome of evaluating a script.
///
/// Field names are part of the stable JSON surface:
/// `stdout`, `stderr`, `exit_status`, `external_calls`, `final_env`,
/// `diagnostics`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExecutionTrace {
    /// Captured standard output bytes (UTF-8 by construction).
    #[serde(serialize_with = "bytes_as_str")]
    pub stdout: Vec<u8>,
    /// Captured standard error bytes.
    #[serde(serialize_with = "bytes_as_str")]
    pub stderr: Vec<u8>,
    /// The script's exit status (last command's status, or the aborting
    /// error's status).
    pub exit_status: i32,
    /// Resolved argv of each stubbed external command, in call order.
    pub external_calls: Vec<Vec<String>>,
    /// The environment at the end of the run.
    pub final_env: Env,
    /// Harness-level problems (step limit, exhausted stdin). Empty for a
    /// clean run; shell-level errors such as an undefined variable are part
    /// of stderr/exit_status instead.
    pub diagnostics: Vec<Diagnostic>,
}

impl ExecutionTrace {
    /// True if the run hit a harness-level error (as opposed to the script
    /// itself failing).
    pub fn has_runtime_error(&self) -> bool {
        self.diagnostics
            .iter()
            .any(|d| d.severity == crate::diag::Severity::Error)
    }

    pub fn stdout_str(&self) -> std::borrow::Cow<'_, str> {
        String::from_utf8_lossy(&self.stdout)
    }

    pub fn stderr_str(&self) -> std::borrow::Cow<'_, str> {
        String::from_utf8_lossy(&self.stderr)
    }
}

fn bytes_as_str<S: Serializer>(bytes: &[u8], serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&String::from_utf8_lossy(bytes))
}

//! Diagnostics: structured errors and warnings carried through every stage.

use crate::span::Span;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// Machine-readable diagnostic codes. The code names are part of the CLI's
/// JSON surface, so they are stable strings rather than a Rust-only enum.
pub mod codes {
    pub const UNTERMINATED_QUOTE: &str = "UnterminatedQuote";
    pub const UNTERMINATED_BACKQUOTE: &str = "UnterminatedBackquote";
    pub const UNEXPECTED_TOKEN: &str = "UnexpectedToken";
    pub const UNCLOSED_CONSTRUCT: &str = "UnclosedConstruct";
    pub const UNKNOWN_TEST_OPERATOR: &str = "UnknownTestOperator";
    pub const MALFORMED_EXPRESSION: &str = "MalformedExpression";
    pub const UNSUPPORTED_CONSTRUCT: &str = "UnsupportedConstruct";
    pub const FOREIGN_CONSTRUCT: &str = "ForeignConstruct";
    pub const IDENTIFIER_COLLISION: &str = "IdentifierCollision";
    pub const READONLY_VIOLATION: &str = "ReadonlyViolation";
    pub const STEP_LIMIT_EXCEEDED: &str = "StepLimitExceeded";
    pub const STDIN_EXHAUSTED: &str = "StdinExhausted";
    pub const NOT_A_NUMBER: &str = "NotANumber";
    pub const DIVISION_BY_ZERO: &str = "DivisionByZero";
    pub const SUBSCRIPT_OUT_OF_RANGE: &str = "SubscriptOutOfRange";
    pub const UNDEFINED_VARIABLE: &str = "UndefinedVariable";
    pub const UNSUPPORTED_PATTERN: &str = "UnsupportedPattern";
    pub const BAD_SUBSCRIPT: &str = "BadSubscript";
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: String,
    pub message: String,
    pub span: Span,
}

impl Diagnostic {
    pub fn error(code: &str, message: impl Into<String>, span: Span) -> Self {
        Diagnostic { severity: Severity::Error, code: code.to_string(), message: message.into(), span }
    }

    pub fn warning(code: &str, message: impl Into<String>, span: Span) -> Self {
        Diagnostic { severity: Severity::Warning, code: code.to_string(), message: message.into(), span }
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}: {} [{}] at {}", sev, self.message, self.code, self.span)
    }
}

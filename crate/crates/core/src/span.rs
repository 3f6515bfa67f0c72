//! Byte spans with line/column info, used by every diagnostic.

use serde::Serialize;

/// A half-open byte range into the source, with 1-based line/column of its start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Span {
    pub byte_start: usize,
    pub byte_end: usize,
    pub line: u32,
    pub column: u32,
}

impl Span {
    pub fn new(byte_start: usize, byte_end: usize, line: u32, column: u32) -> Self {
        Span { byte_start, byte_end, line, column }
    }

    /// A zero-width span at the start of the source. Used for synthesized nodes.
    pub fn zero() -> Self {
        Span { byte_start: 0, byte_end: 0, line: 1, column: 1 }
    }

    /// Smallest span covering both `self` and `other`.
    pub fn merge(self, other: Span) -> Span {
        let (line, column) = if self.byte_start <= other.byte_start {
            (self.line, self.column)
        } else {
            (other.line, other.column)
        };
        Span {
            byte_start: self.byte_start.min(other.byte_start),
            byte_end: self.byte_end.max(other.byte_end),
            line,
            column,
        }
    }
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

//! Dialect-family detection by marker voting.
//!
//! The two families share most of their surface (words, `$name`, pipes,
//! comments), so detection counts the constructs that exist in only one
//! family: closers like `fi`/`esac`/`done` against `endif`/`endsw`/`end`,
//! `read` against `$<`, plain `NAME=VALUE` assignments against
//! `set`/`@` forms, and so on. The verdict reports every marker found, the
//! vote split, and the winning share as a confidence figure, so callers can
//! see *why* a script was classified — or why it stayed ambiguous.

use serde::Serialize;

use crate::dialect::{dialect_by_name, DialectFamily};
use crate::lexer::{tokenize, Token, TokenKind};

/// One family-specific construct spotted in the source.
#[derive(Debug, Clone, Serialize)]
pub struct Evidence {
    pub family: DialectFamily,
    /// Short name of the construct, e.g. `esac`, `set-assignment`, `$<`.
    pub marker: String,
    pub line: u32,
    pub column: u32,
}

/// The detector's answer: a family (or `None` when the script is ambiguous),
/// the share of votes the winner received, and the full evidence list.
#[derive(Debug, Clone, Serialize)]
pub struct DialectVerdict {
    pub family: Option<DialectFamily>,
    pub confidence: f64,
    pub bourne_votes: usize,
    pub cfamily_votes: usize,
    pub evidence: Vec<Evidence>,
}

impl DialectVerdict {
    pub fn label(&self) -> &'static str {
        match self.family {
            Some(f) => f.name(),
            None => "ambiguous",
        }
    }
}

/// Bourne-only keywords that vote wherever they appear.
const BOURNE_ANYWHERE: &[&str] = &["fi", "esac", "done", "do", "elif", "until", "select"];
/// Bourne-only keywords that vote only in command position (they are
/// ordinary English words anywhere else).
const BOURNE_AT_START: &[&str] = &["read", "export", "readonly"];
/// C-family-only keywords that vote wherever they appear.
const CFAMILY_ANYWHERE: &[&str] = &["endif", "endsw", "breaksw", "foreach", "end", "switch", "repeat", "default"];
/// C-family-only keywords that vote only in command position.
const CFAMILY_AT_START: &[&str] = &["set", "alias"];

/// Classify a script's dialect family from its text.
pub fn detect(source: &str) -> DialectVerdict {
    if let Some(verdict) = shebang_verdict(source) {
        return verdict;
    }
    let mut evidence = Vec::new();
    collect_family_markers(source, DialectFamily::Bourne, &mut evidence);
    collect_family_markers(source, DialectFamily::CFamily, &mut evidence);
    evidence.sort_by_key(|e| (e.line, e.column));

    let bourne_votes = evidence.iter().filter(|e| e.family == DialectFamily::Bourne).count();
    let cfamily_votes = evidence.len() - bourne_votes;
    let total = bourne_votes + cfamily_votes;
    let (family, confidence) = if total == 0 || bourne_votes == cfamily_votes {
        (None, if total == 0 { 0.0 } else { 0.5 })
    } else if bourne_votes > cfamily_votes {
        (Some(DialectFamily::Bourne), bourne_votes as f64 / total as f64)
    } else {
        (Some(DialectFamily::CFamily), cfamily_votes as f64 / total as f64)
    };
    DialectVerdict { family, confidence, bourne_votes, cfamily_votes, evidence }
}

/// A `#!` line naming a known shell decides the family outright.
fn shebang_verdict(source: &str) -> Option<DialectVerdict> {
    let first = source.lines().next()?;
    let rest = first.strip_prefix("#!")?;
    let interpreter = rest.split_whitespace().next()?;
    let shell = interpreter.rsplit('/').next()?;
    let dialect = dialect_by_name(shell)?;
    Some(DialectVerdict {
        family: Some(dialect.family),
        confidence: 1.0,
        bourne_votes: usize::from(dialect.family == DialectFamily::Bourne),
        cfamily_votes: usize::from(dialect.family == DialectFamily::CFamily),
        evidence: vec![Evidence {
            family: dialect.family,
            marker: format!("shebang `{shell}`"),
            line: 1,
            column: 1,
        }],
    })
}

/// Lex the source under one family's rules and record that family's markers.
/// A source that does not lex under those rules simply contributes nothing.
fn collect_family_markers(source: &str, family: DialectFamily, evidence: &mut Vec<Evidence>) {
    let Ok(tokens) = tokenize(source, family) else {
        return;
    };
    let mut vote = |marker: &str, token: &Token| {
        evidence.push(Evidence {
            family,
            marker: marker.to_string(),
            line: token.span.line,
            column: token.span.column,
        });
    };
    let mut at_start = true;
    let mut prev_semi_end: Option<usize> = None;
    for t in &tokens {
        match &t.kind {
            TokenKind::Keyword => {
                let kw = t.lexeme.as_str();
                match family {
                    DialectFamily::Bourne => {
                        if BOURNE_ANYWHERE.contains(&kw) || (at_start && BOURNE_AT_START.contains(&kw)) {
                            vote(kw, t);
                        }
                    }
                    DialectFamily::CFamily => {
                        if CFAMILY_ANYWHERE.contains(&kw) || (at_start && CFAMILY_AT_START.contains(&kw)) {
                            vote(kw, t);
                        }
                    }
                }
            }
            TokenKind::AssignWord => {
                // `NAME=VALUE` in command position is the Bourne assignment
                // form; in C scripts the same shape only appears after
                // `set` or `@`, which is not command position.
                if family == DialectFamily::Bourne && at_start {
                    vote("assignment", t);
                }
            }
            TokenKind::Word => {
                if family == DialectFamily::CFamily && t.lexeme.contains("$<") {
                    vote("$<", t);
                }
            }
            TokenKind::Operator('@') => {
                if family == DialectFamily::CFamily && at_start {
                    vote("@-assignment", t);
                }
            }
            TokenKind::Operator(';') => {
                // Two adjacent semicolons are the Bourne case-arm terminator.
                if family == DialectFamily::Bourne && prev_semi_end == Some(t.span.byte_start) {
                    vote(";;", t);
                }
            }
            _ => {}
        }
        prev_semi_end = match t.kind {
            TokenKind::Operator(';') => Some(t.span.byte_end),
            _ => None,
        };
        at_start = matches!(
            t.kind,
            TokenKind::Newline | TokenKind::Operator(';') | TokenKind::Comment
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closers_decide_each_family() {
        let v = detect("if test $a -gt 1\nthen\necho big\nfi\n");
        assert_eq!(v.family, Some(DialectFamily::Bourne));
        assert!(v.confidence > 0.9, "confidence {}", v.confidence);
        let v = detect("if ($a > 1) then\necho big\nendif\n");
        assert_eq!(v.family, Some(DialectFamily::CFamily));
        assert!(v.confidence > 0.9);
    }

    #[test]
    fn assignment_forms_vote() {
        let v = detect("bil=5\necho $bil\n");
        assert_eq!(v.family, Some(DialectFamily::Bourne));
        let v = detect("set bil=5\necho $bil\n");
        assert_eq!(v.family, Some(DialectFamily::CFamily));
        let v = detect("@ bil = $bil + 1\n");
        assert_eq!(v.family, Some(DialectFamily::CFamily));
    }

    #[test]
    fn reads_vote_for_their_family() {
        let v = detect("read nama\n");
        assert_eq!(v.family, Some(DialectFamily::Bourne));
        let v = detect("set nama = $<\n");
        assert_eq!(v.family, Some(DialectFamily::CFamily));
        assert!(v.evidence.iter().any(|e| e.marker == "$<"));
    }

    #[test]
    fn marker_free_scripts_are_ambiguous() {
        let v = detect("echo halo\necho dunia | grep halo\n");
        assert_eq!(v.family, None);
        assert_eq!(v.confidence, 0.0);
        assert_eq!(v.label(), "ambiguous");
        assert!(v.evidence.is_empty());
    }

    #[test]
    fn balanced_votes_stay_ambiguous_at_half_confidence() {
        // `read x` is a Bourne marker; `set y = 1` is a C marker.
        let v = detect("read x\nset y = 1\n");
        assert_eq!(v.family, None);
        assert_eq!(v.confidence, 0.5);
        assert_eq!(v.bourne_votes, 1);
        assert_eq!(v.cfamily_votes, 1);
    }

    #[test]
    fn unlexable_sources_are_ambiguous_with_zero_confidence() {
        let v = detect("echo \"unterminated\n");
        assert_eq!(v.family, None);
        assert_eq!(v.confidence, 0.0);
    }

    #[test]
    fn shebang_is_decisive() {
        let v = detect("#!/bin/csh\nread x\nread y\nread z\n");
        assert_eq!(v.family, Some(DialectFamily::CFamily));
        assert_eq!(v.confidence, 1.0);
        assert!(v.evidence[0].marker.contains("shebang"));
        let v = detect("#!/usr/bin/env is not a shell we know\nset x = 1\n");
        assert_eq!(v.family, Some(DialectFamily::CFamily), "falls back to voting");
    }

    #[test]
    fn case_and_switch_forms_split_correctly() {
        let v = detect("case $p in\n1)\necho one\n;;\nesac\n");
        assert_eq!(v.family, Some(DialectFamily::Bourne));
        assert!(v.evidence.iter().any(|e| e.marker == ";;"));
        assert!(v.evidence.iter().any(|e| e.marker == "esac"));
        let v = detect("switch ($p)\ncase 1:\necho one\nbreaksw\nendsw\n");
        assert_eq!(v.family, Some(DialectFamily::CFamily));
    }

    #[test]
    fn evidence_lines_point_at_the_markers() {
        let v = detect("echo hi\nread x\n");
        assert_eq!(v.evidence.len(), 1);
        assert_eq!(v.evidence[0].line, 2);
    }
}

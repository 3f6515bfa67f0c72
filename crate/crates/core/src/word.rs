//! Word analysis: splitting a word lexeme into [`Segment`]s.
//!
//! `$name` and backquoted spans are recognized unquoted and inside double
//! quotes, never inside single quotes. The C family additionally knows
//! `$name[i]`, `$#name` and `$<`. A backquoted span becomes a one-level
//! command substitution whose inner text is parsed as a simple command.

use crate::ast::{Quoting, Segment, SimpleCommand, Word};
use crate::diag::{codes, Diagnostic};
use crate::dialect::DialectFamily;
use crate::lexer::{self, TokenKind};
use crate::span::Span;

/// Analyze one word lexeme (as produced by the lexer) into a [`Word`].
/// `span` is the lexeme's source span, used for diagnostics.
pub fn analyze_word(lexeme: &str, family: DialectFamily, span: Span) -> Result<Word, Diagnostic> {
    let (inner, quoting) = strip_quotes(lexeme);
    let segments = match quoting {
        Quoting::Single => {
            if inner.is_empty() {
                Vec::new()
            } else {
                vec![Segment::Literal(inner.to_string())]
            }
        }
        _ => segment_chars(inner, family, quoting, span)?,
    };
    Ok(Word::new(segments, lexeme, quoting))
}

/// If the lexeme is wholly wrapped in one pair of quotes, strip them.
fn strip_quotes(lexeme: &str) -> (&str, Quoting) {
    for (quote, quoting) in [('"', Quoting::Double), ('\'', Quoting::Single)] {
        if lexeme.len() >= 2 && lexeme.starts_with(quote) && lexeme.ends_with(quote) {
            let inner = &lexeme[1..lexeme.len() - 1];
            // `"a" b"` must not count as wholly quoted.
            if !inner.contains(quote) {
                return (inner, quoting);
            }
        }
    }
    (lexeme, Quoting::Unquoted)
}

fn segment_chars(
    text: &str,
    family: DialectFamily,
    quoting: Quoting,
    span: Span,
) -> Result<Vec<Segment>, Diagnostic> {
    let mut segments = Vec::new();
    let mut literal = String::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;

    let flush = |literal: &mut String, segments: &mut Vec<Segment>| {
        if !literal.is_empty() {
            segments.push(Segment::Literal(std::mem::take(literal)));
        }
    };

    while i < chars.len() {
        match chars[i] {
            // Both families substitute backquotes when unquoted and inside
            // double quotes; only single quotes suppress them.
            '`' => {
                let close = chars[i + 1..].iter().position(|&c| c == '`').map(|p| p + i + 1);
                let Some(close) = close else {
                    return Err(Diagnostic::error(codes::UNTERMINATED_BACKQUOTE, "unterminated backquote", span));
                };
                let inner: String = chars[i + 1..close].iter().collect();
                flush(&mut literal, &mut segments);
                segments.push(Segment::CmdSub(parse_cmdsub(&inner, family, span)?));
                i = close + 1;
            }
            '$' => {
                let rest = &chars[i + 1..];
                match dollar_form(rest, family) {
                    Some((seg, consumed)) => {
                        flush(&mut literal, &mut segments);
                        segments.push(seg);
                        i += 1 + consumed;
                    }
                    None => {
                        literal.push('$');
                        i += 1;
                    }
                }
            }
            c => {
                literal.push(c);
                i += 1;
            }
        }
    }
    flush(&mut literal, &mut segments);
    if segments.is_empty() && quoting != Quoting::Unquoted {
        // An explicitly quoted empty word stays a word with an empty literal.
        segments.push(Segment::Literal(String::new()));
    }
    Ok(segments)
}

/// Recognize what follows a `$`. Returns the segment and how many chars of
/// `rest` it consumed, or `None` when the `$` is just a literal dollar sign.
fn dollar_form(rest: &[char], family: DialectFamily) -> Option<(Segment, usize)> {
    if family == DialectFamily::CFamily {
        if rest.first() == Some(&'<') {
            return Some((Segment::StdinRead, 1));
        }
        if rest.first() == Some(&'#') {
            let (name, len) = scan_name(&rest[1..])?;
            return Some((Segment::LenRef(name), 1 + len));
        }
    }
    let (name, len) = scan_name(rest)?;
    if family == DialectFamily::CFamily && rest.get(len) == Some(&'[') {
        // `$name[digits]`
        let digits: String = rest[len + 1..].iter().take_while(|c| c.is_ascii_digit()).collect();
        let close = len + 1 + digits.len();
        if !digits.is_empty() && rest.get(close) == Some(&']') {
            if let Ok(index) = digits.parse::<usize>() {
                if index >= 1 {
                    return Some((Segment::ArrayRef(name, index), close + 1));
                }
            }
            // `$name[0]` or an overflowing subscript: keep the `$name` and
            // let the bracket text stay literal; the evaluator never sees a
            // non-positive subscript.
        }
    }
    Some((Segment::VarRef(name), len))
}

fn scan_name(rest: &[char]) -> Option<(String, usize)> {
    match rest.first() {
        Some(c) if c.is_ascii_alphabetic() || *c == '_' => {}
        _ => return None,
    }
    let name: String = rest
        .iter()
        .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
        .collect();
    let len = name.chars().count();
    Some((name, len))
}

/// Parse the inside of a backquoted span as one simple command.
fn parse_cmdsub(inner: &str, family: DialectFamily, span: Span) -> Result<SimpleCommand, Diagnostic> {
    let tokens = lexer::tokenize(inner, family)?;
    let mut argv = Vec::new();
    for tok in &tokens {
        match tok.kind {
            TokenKind::Word | TokenKind::Keyword | TokenKind::AssignWord => {
                argv.push(analyze_word(&tok.lexeme, family, span)?);
            }
            TokenKind::Eof => break,
            _ => {
                return Err(Diagnostic::error(
                    codes::UNEXPECTED_TOKEN,
                    format!("unexpected `{}` inside command substitution", tok.lexeme),
                    span,
                ));
            }
        }
    }
    if argv.is_empty() {
        return Err(Diagnostic::error(
            codes::UNEXPECTED_TOKEN,
            "empty command substitution",
            span,
        ));
    }
    Ok(SimpleCommand::new(argv))
}

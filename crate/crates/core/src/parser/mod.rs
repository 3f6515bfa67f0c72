//! Recursive-descent parsers for the two dialect families.
//!
//! Both parsers work over the token stream produced by [`crate::lexer`] and
//! build the shared [`crate::ast`] types. They are strict: anything outside
//! the supported subset is a hard error carrying a [`Diagnostic`].

mod bourne;
mod csh;

pub(crate) use csh::equality_resolves_numeric;

use crate::ast::{Redirect, ScriptAst, SimpleCommand, Stmt, StmtKind, Word};
use crate::diag::{codes, Diagnostic};
use crate::dialect::DialectFamily;
use crate::lexer::{tokenize, Token, TokenKind};
use crate::span::Span;
use crate::word::analyze_word;

/// Parse `source` as a script of the given family.
pub fn parse_script(source: &str, family: DialectFamily) -> Result<ScriptAst, Diagnostic> {
    let tokens = tokenize(source, family)?;
    let mut cur = Cursor::new(tokens);
    let statements = match family {
        DialectFamily::Bourne => bourne::parse(&mut cur)?,
        DialectFamily::CFamily => csh::parse(&mut cur)?,
    };
    Ok(ScriptAst::new(statements))
}

/// Where a statement block may stop.
pub(crate) struct BlockEnd<'a> {
    /// Keywords that end the block (left unconsumed).
    pub stop_keywords: &'a [&'a str],
    /// Whether an adjacent `;;` pair ends the block (Bourne case arms).
    pub stop_double_semi: bool,
    /// `(construct, closer, opening span)` for the unclosed-construct error
    /// when the input runs out first; `None` at top level.
    pub unclosed: Option<(&'a str, &'a str, Span)>,
}

impl<'a> BlockEnd<'a> {
    pub(crate) fn top_level() -> Self {
        BlockEnd { stop_keywords: &[], stop_double_semi: false, unclosed: None }
    }

    pub(crate) fn until(
        stop_keywords: &'a [&'a str],
        construct: &'a str,
        closer: &'a str,
        open: Span,
    ) -> Self {
        BlockEnd { stop_keywords, stop_double_semi: false, unclosed: Some((construct, closer, open)) }
    }
}

/// Reject empty bodies: every construct in the subset requires at least one
/// statement (comments count).
pub(crate) fn require_nonempty(block: &[Stmt], what: &str, at: Span) -> Result<(), Diagnostic> {
    if block.is_empty() {
        Err(Diagnostic::error(
            codes::UNEXPECTED_TOKEN,
            format!("{what} must contain at least one statement"),
            at,
        ))
    } else {
        Ok(())
    }
}

/// Parse a literal case/switch pattern.
pub(crate) fn pattern_text(cur: &mut Cursor, family: DialectFamily) -> Result<String, Diagnostic> {
    let at = cur.peek().span;
    let w = parse_word(cur, family)?;
    match w.as_literal() {
        Some(s) => Ok(s.to_string()),
        None => Err(Diagnostic::error(
            codes::UNSUPPORTED_PATTERN,
            "patterns must be literal text",
            at,
        )),
    }
}

/// A cloning cursor over the token vector with small lookahead helpers.
pub(crate) struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
    /// Span of the most recently consumed token, for statement spans.
    last_span: Span,
}

impl Cursor {
    pub(crate) fn new(tokens: Vec<Token>) -> Self {
        Cursor { tokens, pos: 0, last_span: Span::zero() }
    }

    pub(crate) fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    pub(crate) fn peek_at(&self, ahead: usize) -> &Token {
        &self.tokens[(self.pos + ahead).min(self.tokens.len() - 1)]
    }

    pub(crate) fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos.min(self.tokens.len() - 1)].clone();
        if self.pos < self.tokens.len() {
            self.pos += 1;
        }
        self.last_span = tok.span;
        tok
    }

    pub(crate) fn at_eof(&self) -> bool {
        matches!(self.peek().kind, TokenKind::Eof)
    }

    pub(crate) fn last_span(&self) -> Span {
        self.last_span
    }

    /// Skip newline tokens.
    pub(crate) fn skip_newlines(&mut self) {
        while matches!(self.peek().kind, TokenKind::Newline) {
            self.bump();
        }
    }

    /// Skip newlines and single `;` separators (construct glue such as
    /// `if cond; then`).
    pub(crate) fn skip_separators(&mut self) {
        while matches!(self.peek().kind, TokenKind::Newline | TokenKind::Operator(';')) {
            self.bump();
        }
    }

    /// True when the next two tokens are the byte-adjacent `;;` pair.
    pub(crate) fn at_double_semi(&self) -> bool {
        let a = self.peek();
        let b = self.peek_at(1);
        a.is_op(';') && b.is_op(';') && a.span.byte_end == b.span.byte_start
    }

    pub(crate) fn is_keyword(&self, kw: &str) -> bool {
        self.peek().is_keyword(kw)
    }

    pub(crate) fn expect_keyword(&mut self, kw: &str) -> Result<Token, Diagnostic> {
        if self.is_keyword(kw) {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&format!("expected `{kw}`")))
        }
    }

    pub(crate) fn expect_operator(&mut self, op: char) -> Result<Token, Diagnostic> {
        if self.peek().is_op(op) {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&format!("expected `{op}`")))
        }
    }

    /// Build an `UnexpectedToken` error at the current position.
    pub(crate) fn unexpected(&self, expected: &str) -> Diagnostic {
        let t = self.peek();
        let found = match t.kind {
            TokenKind::Eof => "end of input".to_string(),
            TokenKind::Newline => "end of line".to_string(),
            _ => format!("`{}`", t.lexeme),
        };
        Diagnostic::error(
            codes::UNEXPECTED_TOKEN,
            format!("{expected}, found {found}"),
            t.span,
        )
    }

    pub(crate) fn unclosed(&self, construct: &str, closer: &str, open: Span) -> Diagnostic {
        Diagnostic::error(
            codes::UNCLOSED_CONSTRUCT,
            format!("`{construct}` is never closed; expected `{closer}`"),
            open,
        )
    }
}

/// Tokens that may contribute a word to an argument vector. A bare `=` in
/// argument position is taken as the literal word `=` so that lines such as
/// `echo a = b` stay valid.
fn is_argv_token(kind: &TokenKind) -> bool {
    // Keywords are only special in command position (the statement
    // dispatcher claims them first); as arguments they are plain words,
    // so `echo done` echoes the word `done`.
    matches!(
        kind,
        TokenKind::Word | TokenKind::AssignWord | TokenKind::Operator('=') | TokenKind::Keyword
    )
}

/// Parse one word in argument position.
pub(crate) fn parse_word(cur: &mut Cursor, family: DialectFamily) -> Result<Word, Diagnostic> {
    if is_argv_token(&cur.peek().kind) {
        let t = cur.bump();
        analyze_word(&t.lexeme, family, t.span)
    } else {
        Err(cur.unexpected("expected a word"))
    }
}

/// Parse a word that must be a plain identifier (variable-name position).
pub(crate) fn parse_identifier(cur: &mut Cursor) -> Result<(String, Span), Diagnostic> {
    let t = cur.peek();
    if matches!(t.kind, TokenKind::Word) && crate::lexer::is_identifier(&t.lexeme) {
        let t = cur.bump();
        Ok((t.lexeme, t.span))
    } else {
        Err(cur.unexpected("expected a variable name"))
    }
}

/// Parse a simple command: argv words plus optional `> path` redirects.
/// Stops before `|`, separators, keywords and closing brackets.
pub(crate) fn parse_simple_command(
    cur: &mut Cursor,
    family: DialectFamily,
) -> Result<(SimpleCommand, Span), Diagnostic> {
    let start = cur.peek().span;
    let mut argv = Vec::new();
    let mut redirects = Vec::new();
    loop {
        let t = cur.peek();
        if is_argv_token(&t.kind) {
            let t = cur.bump();
            argv.push(analyze_word(&t.lexeme, family, t.span)?);
        } else if t.is_op('>') {
            cur.bump();
            let target = parse_word(cur, family)?;
            redirects.push(Redirect { target: redirect_target(&target) });
        } else {
            break;
        }
    }
    if argv.is_empty() {
        return Err(cur.unexpected("expected a command"));
    }
    let span = start.merge(cur.last_span());
    Ok((SimpleCommand { argv, redirects }, span))
}

/// The textual form of a redirect target (paths are taken literally).
fn redirect_target(word: &Word) -> String {
    word.as_literal()
        .map(str::to_string)
        .unwrap_or_else(|| word.raw_lexeme.clone())
}

/// Parse a command statement: one simple command, possibly extended into a
/// pipeline with `|`.
pub(crate) fn parse_command(cur: &mut Cursor, family: DialectFamily) -> Result<Stmt, Diagnostic> {
    let (first, span) = parse_simple_command(cur, family)?;
    let mut stages = vec![first];
    let mut full = span;
    while cur.peek().is_op('|') {
        cur.bump();
        let (next, sp) = parse_simple_command(cur, family)?;
        stages.push(next);
        full = full.merge(sp);
    }
    let kind = if stages.len() == 1 {
        StmtKind::Simple(stages.pop().expect("one stage"))
    } else {
        StmtKind::Pipeline(stages)
    };
    Ok(Stmt::new(kind, full))
}

//! Family-sensitive tokenizer.
//!
//! Lexing is lossless: every token records its exact source lexeme and span,
//! and concatenating lexemes with the original separators reproduces the
//! source byte for byte. Quoted and backquoted spans are kept inside a single
//! word token; splitting them into segments happens later, at word analysis.

use crate::diag::{codes, Diagnostic};
use crate::dialect::DialectFamily;
use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    /// An ordinary word (possibly containing quoted or backquoted spans).
    Word,
    /// `NAME=VALUE` with no spaces around the `=`.
    AssignWord,
    /// A bare word that is a keyword of the family being lexed.
    Keyword,
    /// One of `; | > ( ) = @ \``.
    Operator(char),
    Newline,
    /// `# ...` to end of line, `#` included.
    Comment,
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub span: Span,
}

impl Token {
    pub fn is_keyword(&self, text: &str) -> bool {
        self.kind == TokenKind::Keyword && self.lexeme == text
    }

    pub fn is_op(&self, op: char) -> bool {
        self.kind == TokenKind::Operator(op)
    }
}

pub const BOURNE_KEYWORDS: &[&str] = &[
    "if", "then", "elif", "else", "fi", "case", "in", "esac", "for", "do", "done", "while",
    "until", "select", "read", "export", "readonly", "break", "test",
];

pub const CFAMILY_KEYWORDS: &[&str] = &[
    "if", "then", "else", "endif", "switch", "case", "default", "breaksw", "endsw", "foreach",
    "end", "while", "repeat", "set", "alias", "unset", "break",
];

pub fn keywords_for(family: DialectFamily) -> &'static [&'static str] {
    match family {
        DialectFamily::Bourne => BOURNE_KEYWORDS,
        DialectFamily::CFamily => CFAMILY_KEYWORDS,
    }
}

/// Tokenize `source` under `family`'s keyword set and word-breaking rules.
/// The token stream always ends with an `Eof` token whose span is empty.
pub fn tokenize(source: &str, family: DialectFamily) -> Result<Vec<Token>, Diagnostic> {
    Lexer::new(source, family).run()
}

struct Lexer<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    /// Index into `chars`.
    idx: usize,
    line: u32,
    col: u32,
    family: DialectFamily,
    tokens: Vec<Token>,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, family: DialectFamily) -> Self {
        Lexer {
            src,
            chars: src.char_indices().collect(),
            idx: 0,
            line: 1,
            col: 1,
            family,
            tokens: Vec::new(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.idx + offset).map(|&(_, c)| c)
    }

    fn byte_pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.src.len(), |&(b, _)| b)
    }

    fn advance(&mut self) -> Option<char> {
        let &(_, c) = self.chars.get(self.idx)?;
        self.idx += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn run(mut self) -> Result<Vec<Token>, Diagnostic> {
        while let Some(c) = self.peek() {
            match c {
                ' ' | '\t' | '\r' => {
                    self.advance();
                }
                '\n' => self.single(TokenKind::Newline),
                '#' => self.comment(),
                ';' | '|' | '(' | ')' | '@' => self.single(TokenKind::Operator(c)),
                '>' => self.punct_pair(TokenKind::Operator('>')),
                '=' => self.punct_pair(TokenKind::Operator('=')),
                '<' => self.punct_pair(TokenKind::Word),
                '!' => self.punct_pair(TokenKind::Word),
                ':' if self.family == DialectFamily::CFamily => self.single(TokenKind::Word),
                _ => self.word()?,
            }
        }
        let end = self.src.len();
        self.tokens.push(Token {
            kind: TokenKind::Eof,
            lexeme: String::new(),
            span: Span::new(end, end, self.line, self.col),
        });
        Ok(self.tokens)
    }

    fn start_span(&self) -> (usize, u32, u32) {
        (self.byte_pos(), self.line, self.col)
    }

    fn finish(&mut self, kind: TokenKind, start: (usize, u32, u32)) {
        let (byte_start, line, col) = start;
        let byte_end = self.byte_pos();
        self.tokens.push(Token {
            kind,
            lexeme: self.src[byte_start..byte_end].to_string(),
            span: Span::new(byte_start, byte_end, line, col),
        });
    }

    fn single(&mut self, kind: TokenKind) {
        let start = self.start_span();
        self.advance();
        self.finish(kind, start);
    }

    /// The punctuation char alone lexes as `alone_kind`; followed by `=` it
    /// lexes as a two-character word (`>=`, `==`, `<=`, `!=`).
    fn punct_pair(&mut self, alone_kind: TokenKind) {
        let start = self.start_span();
        self.advance();
        if self.peek() == Some('=') {
            self.advance();
            self.finish(TokenKind::Word, start);
        } else {
            self.finish(alone_kind, start);
        }
    }

    fn comment(&mut self) {
        let start = self.start_span();
        while let Some(c) = self.peek() {
            if c == '\n' {
                break;
            }
            self.advance();
        }
        self.finish(TokenKind::Comment, start);
    }

    /// Scan one word: a maximal run of word characters where quoted and
    /// backquoted spans count as part of the word. Then classify it as an
    /// assign-word, keyword, or plain word.
    fn word(&mut self) -> Result<(), Diagnostic> {
        let start = self.start_span();
        let mut saw_quote = false;
        while let Some(c) = self.peek() {
            match c {
                ' ' | '\t' | '\r' | '\n' | ';' | '|' | '(' | ')' | '>' => break,
                '<' => break,
                '"' | '\'' => {
                    saw_quote = true;
                    self.quoted_span(c)?;
                }
                '`' => {
                    saw_quote = true;
                    self.backquoted_span()?;
                }
                '$' => {
                    self.advance();
                    // `$<` reads stdin; the `<` belongs to the word.
                    if self.peek() == Some('<') {
                        self.advance();
                    }
                }
                ':' if self.family == DialectFamily::CFamily => {
                    // A colon continues the word only when glued to more word
                    // characters (`a:b`); a trailing colon is its own token so
                    // that `case 1:` and `default:` lex uniformly.
                    match self.peek_at(1) {
                        Some(n) if !is_word_break(n) && n != ':' => {
                            self.advance();
                        }
                        _ => break,
                    }
                }
                _ => {
                    self.advance();
                }
            }
        }
        let (byte_start, line, col) = start;
        let lexeme = &self.src[byte_start..self.byte_pos()];
        let kind = classify_word(lexeme, saw_quote, self.family);
        self.finish(kind, (byte_start, line, col));
        Ok(())
    }

    fn quoted_span(&mut self, quote: char) -> Result<(), Diagnostic> {
        let (byte_start, line, col) = self.start_span();
        self.advance();
        while let Some(c) = self.peek() {
            if c == quote {
                self.advance();
                return Ok(());
            }
            if c == '\n' {
                break;
            }
            self.advance();
        }
        Err(Diagnostic::error(
            codes::UNTERMINATED_QUOTE,
            format!("unterminated {} quote", if quote == '"' { "double" } else { "single" }),
            Span::new(byte_start, self.byte_pos(), line, col),
        ))
    }

    fn backquoted_span(&mut self) -> Result<(), Diagnostic> {
        let (byte_start, line, col) = self.start_span();
        self.advance();
        while let Some(c) = self.peek() {
            if c == '`' {
                self.advance();
                return Ok(());
            }
            if c == '\n' {
                break;
            }
            self.advance();
        }
        Err(Diagnostic::error(
            codes::UNTERMINATED_BACKQUOTE,
            "unterminated backquote",
            Span::new(byte_start, self.byte_pos(), line, col),
        ))
    }
}

fn is_word_break(c: char) -> bool {
    matches!(c, ' ' | '\t' | '\r' | '\n' | ';' | '|' | '(' | ')' | '>' | '<')
}

fn classify_word(lexeme: &str, saw_quote: bool, family: DialectFamily) -> TokenKind {
    // NAME=... with no spaces is an assign-word even when the value is
    // quoted or backquoted (`x="a b"`, `n=\`expr 1 + 2\``).
    if let Some(eq) = lexeme.find('=') {
        let name = &lexeme[..eq];
        if !name.is_empty() && is_identifier(name) && !name.contains(['"', '\'', '`']) {
            return TokenKind::AssignWord;
        }
    }
    if !saw_quote && keywords_for(family).contains(&lexeme) {
        return TokenKind::Keyword;
    }
    TokenKind::Word
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

//! The dialect-neutral program tree.
//!
//! Both parsers produce this AST and the renderer can print it in either
//! family's concrete syntax. Nodes carry the source span they were parsed
//! from; spans (and the surface bookkeeping on [`Word`]) are excluded from
//! equality so that parse → render → parse round-trips compare structurally.

use crate::span::Span;

// ===========================================================================
// Words
// ===========================================================================

/// How a word was quoted in the source. Surface-only: two words that differ
/// only in quoting compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quoting {
    Unquoted,
    Double,
    Single,
}

/// One piece of a word.
#[derive(Debug, Clone, PartialEq)]
pub enum Segment {
    /// Literal bytes, stored exactly as typed.
    Literal(String),
    /// `$name`
    VarRef(String),
    /// `$name[i]` — 1-based element access (C family only).
    ArrayRef(String, usize),
    /// `$#name` — element count (C family only).
    LenRef(String),
    /// `` `cmd args` `` — one level of command substitution.
    CmdSub(SimpleCommand),
    /// `$<` — read one line from standard input (C family only).
    StdinRead,
}

/// A shell word: a sequence of segments plus surface bookkeeping.
#[derive(Debug, Clone)]
pub struct Word {
    pub segments: Vec<Segment>,
    /// The exact source text this word was parsed from (or a synthesized
    /// spelling for words the translator invents). Not part of equality.
    pub raw_lexeme: String,
    /// Not part of equality; the renderer re-quotes canonically.
    pub quoting: Quoting,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.segments == other.segments
    }
}

impl Word {
    pub fn new(segments: Vec<Segment>, raw_lexeme: impl Into<String>, quoting: Quoting) -> Self {
        Word { segments, raw_lexeme: raw_lexeme.into(), quoting }
    }

    /// A word holding a single literal.
    pub fn literal(text: impl Into<String>) -> Self {
        let text = text.into();
        Word { segments: vec![Segment::Literal(text.clone())], raw_lexeme: text, quoting: Quoting::Unquoted }
    }

    /// A word holding a single `$name` reference.
    pub fn var(name: impl Into<String>) -> Self {
        let name = name.into();
        let raw = format!("${name}");
        Word { segments: vec![Segment::VarRef(name)], raw_lexeme: raw, quoting: Quoting::Unquoted }
    }

    /// The literal text if this word is a single `Literal` segment.
    pub fn as_literal(&self) -> Option<&str> {
        match self.segments.as_slice() {
            [Segment::Literal(s)] => Some(s),
            _ => None,
        }
    }

    /// True if the word is exactly `$<`.
    pub fn is_stdin_read(&self) -> bool {
        matches!(self.segments.as_slice(), [Segment::StdinRead])
    }
}

// ===========================================================================
// Commands and conditions
// ===========================================================================

/// A redirect. Only stdout-overwrite (`> path`) is representable; the
/// conventional target `/dev/null` means "discard".
#[derive(Debug, Clone, PartialEq)]
pub struct Redirect {
    pub target: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimpleCommand {
    pub argv: Vec<Word>,
    pub redirects: Vec<Redirect>,
}

impl SimpleCommand {
    pub fn new(argv: Vec<Word>) -> Self {
        SimpleCommand { argv, redirects: Vec::new() }
    }
}

/// Comparison operators, named by semantics rather than surface spelling.
/// Each maps to exactly one spelling per family:
/// `-gt`/`>`, `-lt`/`<`, `-ge`/`>=`, `-le`/`<=`, `-eq`/`==`, `-ne`/`!=`,
/// and the string forms `=`/`==`, `!=`/`!=`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareOp {
    Gt,
    Lt,
    Ge,
    Le,
    Eq,
    Ne,
    StrEq,
    StrNe,
}

impl CompareOp {
    pub fn is_numeric(self) -> bool {
        !matches!(self, CompareOp::StrEq | CompareOp::StrNe)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Condition {
    /// `test a OP b` / `( a OP b )`
    Compare { op: CompareOp, lhs: Word, rhs: Word },
    /// `test ! ...` / `( ! ... )`
    Not(Box<Condition>),
    /// A command or pipeline whose exit status is the condition
    /// (Bourne family only).
    PipelineStatus(Box<Stmt>),
}

// ===========================================================================
// Arithmetic (C-family `@` assignments)
// ===========================================================================

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithBinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl ArithBinOp {
    pub fn glyph(self) -> &'static str {
        match self {
            ArithBinOp::Add => "+",
            ArithBinOp::Sub => "-",
            ArithBinOp::Mul => "*",
            ArithBinOp::Div => "/",
        }
    }
}

/// An arithmetic expression as written after `@ name =` or `@ name +=`.
#[derive(Debug, Clone, PartialEq)]
pub enum ArithExpr {
    Literal(i64),
    Var(String),
    Binary { op: ArithBinOp, lhs: Box<ArithExpr>, rhs: Box<ArithExpr> },
}

impl ArithExpr {
    /// An atom is a literal or a variable reference — the shapes that can be
    /// spelled as a single `expr` argument.
    pub fn is_atom(&self) -> bool {
        matches!(self, ArithExpr::Literal(_) | ArithExpr::Var(_))
    }
}

// ===========================================================================
// Statements
// ===========================================================================

/// The right-hand side of an assignment.
#[derive(Debug, Clone, PartialEq)]
pub enum AssignValue {
    /// `name=word` / `set name = word`
    Scalar(Word),
    /// `set name = (w1 w2 ...)` — C family only.
    List(Vec<Word>),
    /// `@ name = expr` — numeric assignment, C family only.
    Arith(ArithExpr),
    /// `@ name += expr` — numeric increment, C family only.
    AugmentedAdd(ArithExpr),
}

/// One arm of a `case`/`switch`.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseArm {
    /// Alternative literal patterns: `p1|p2)` or adjacent `case p1: case p2:`.
    pub patterns: Vec<String>,
    pub body: Block,
    /// Whether the arm ends with an explicit break (`;;` always does;
    /// `breaksw` may be absent, which means fallthrough).
    pub explicit_break: bool,
}

pub type Block = Vec<Stmt>;

#[derive(Debug, Clone)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

impl Stmt {
    pub fn new(kind: StmtKind, span: Span) -> Self {
        Stmt { kind, span }
    }

    /// Statement with a zero span, for synthesized nodes.
    pub fn synthesized(kind: StmtKind) -> Self {
        Stmt { kind, span: Span::zero() }
    }
}

/// Spans are surface bookkeeping; equality is structural.
impl PartialEq for Stmt {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Assign { name: String, value: AssignValue },
    /// `read name` / `set name = $<`
    ReadInto { name: String },
    /// `export names...` — Bourne family only.
    Export { names: Vec<String> },
    /// `readonly names...` — Bourne family only.
    Readonly { names: Vec<String> },
    /// `alias name words...` — C family only.
    AliasDef { name: String, replacement: Vec<Word> },
    Simple(SimpleCommand),
    /// Two or more stages joined by `|`.
    Pipeline(Vec<SimpleCommand>),
    If { arms: Vec<(Condition, Block)>, else_block: Option<Block> },
    CaseSwitch { subject: Word, arms: Vec<CaseArm>, default_block: Option<Block> },
    ForEach { var: String, items: Vec<Word>, body: Block },
    /// `while`/`until` (Bourne) and `while (...)` (C family).
    /// `negated` encodes `until`: loop while the condition is false.
    WhileLoop { cond: Condition, body: Block, negated: bool },
    /// `repeat N command` — C family only.
    RepeatLoop { count: u32, command: SimpleCommand },
    /// `select name in items...; do ... done` — Bourne family only.
    SelectLoop { var: String, items: Vec<Word>, body: Block },
    Break,
    /// `# text` — carried through parsing and rendering (it may move to its
    /// own line), skipped by the evaluator.
    Comment(String),
}

/// A whole script.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScriptAst {
    pub statements: Vec<Stmt>,
}

impl ScriptAst {
    pub fn new(statements: Vec<Stmt>) -> Self {
        ScriptAst { statements }
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }
}

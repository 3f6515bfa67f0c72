//! Grammar for the C-shell family (`csh`, `tcsh` subset).

use crate::ast::{
    ArithBinOp, ArithExpr, AssignValue, Block, CaseArm, CompareOp, Condition, Quoting, Segment,
    Stmt, StmtKind, Word,
};
use crate::diag::{codes, Diagnostic};
use crate::dialect::DialectFamily;
use crate::lexer::TokenKind;
use crate::span::Span;

use super::{
    parse_command, parse_identifier, parse_simple_command, parse_word, pattern_text,
    require_nonempty, BlockEnd, Cursor,
};

const FAMILY: DialectFamily = DialectFamily::CFamily;

pub(super) fn parse(cur: &mut Cursor) -> Result<Vec<Stmt>, Diagnostic> {
    parse_block(cur, &BlockEnd::top_level())
}

fn parse_block(cur: &mut Cursor, end: &BlockEnd) -> Result<Block, Diagnostic> {
    let mut stmts = Vec::new();
    loop {
        match cur.peek().kind {
            TokenKind::Newline | TokenKind::Operator(';') => {
                cur.bump();
            }
            TokenKind::Comment => {
                let t = cur.bump();
                stmts.push(Stmt::new(StmtKind::Comment(t.lexeme[1..].to_string()), t.span));
            }
            TokenKind::Eof => {
                if let Some((construct, closer, open)) = end.unclosed {
                    return Err(cur.unclosed(construct, closer, open));
                }
                break;
            }
            TokenKind::Keyword if end.stop_keywords.contains(&cur.peek().lexeme.as_str()) => break,
            _ => stmts.push(parse_statement(cur)?),
        }
    }
    Ok(stmts)
}

fn parse_statement(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    match &cur.peek().kind {
        TokenKind::Operator('@') => parse_arith(cur),
        TokenKind::Keyword => match cur.peek().lexeme.as_str() {
            "set" => parse_set(cur),
            "if" => parse_if(cur),
            "switch" => parse_switch(cur),
            "foreach" => parse_foreach(cur),
            "while" => parse_while(cur),
            "repeat" => parse_repeat(cur),
            "alias" => parse_alias(cur),
            "unset" => parse_unset(cur),
            "break" => {
                let t = cur.bump();
                Ok(Stmt::new(StmtKind::Break, t.span))
            }
            other => Err(cur.unexpected(&format!("`{other}` cannot start a statement here"))),
        },
        TokenKind::Word | TokenKind::AssignWord => parse_command(cur, FAMILY),
        _ => Err(cur.unexpected("expected a statement")),
    }
}

/// Require the statement to end here (separator, comment, or end of input).
fn end_of_statement(cur: &mut Cursor, context: &str) -> Result<(), Diagnostic> {
    match cur.peek().kind {
        TokenKind::Newline | TokenKind::Comment | TokenKind::Eof | TokenKind::Operator(';') => {
            Ok(())
        }
        _ => Err(cur.unexpected(context)),
    }
}

// ---------------------------------------------------------------------------
// set / @
// ---------------------------------------------------------------------------

/// `set name = value`, `set name=value`, `set name = ( items )`,
/// `set name = $<` (read from stdin). The `=` may be glued to either side.
fn parse_set(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let kw = cur.bump();
    let (name, kind) = match cur.peek().kind {
        TokenKind::AssignWord => {
            let t = cur.bump();
            let eq = t.lexeme.find('=').expect("assign-word has `=`");
            let name = t.lexeme[..eq].to_string();
            let value_text = t.lexeme[eq + 1..].to_string();
            if value_text.is_empty() {
                (name, parse_set_value(cur)?)
            } else {
                let word = crate::word::analyze_word(&value_text, FAMILY, t.span)?;
                (name, scalar_or_read(word))
            }
        }
        TokenKind::Word => {
            let (name, _) = parse_identifier(cur)?;
            cur.expect_operator('=')?;
            (name, parse_set_value(cur)?)
        }
        _ => return Err(cur.unexpected("expected a variable name after `set`")),
    };
    end_of_statement(cur, "unexpected trailing words after `set`")?;
    let span = kw.span.merge(cur.last_span());
    let kind = match kind {
        SetValue::Read => StmtKind::ReadInto { name },
        SetValue::Value(value) => StmtKind::Assign { name, value },
    };
    Ok(Stmt::new(kind, span))
}

enum SetValue {
    Value(AssignValue),
    Read,
}

fn scalar_or_read(word: Word) -> SetValue {
    if word.is_stdin_read() {
        SetValue::Read
    } else {
        SetValue::Value(AssignValue::Scalar(word))
    }
}

/// The value position after `set name =`: a parenthesized list, a single
/// word, or nothing (the empty string).
fn parse_set_value(cur: &mut Cursor) -> Result<SetValue, Diagnostic> {
    match cur.peek().kind {
        TokenKind::Operator('(') => {
            cur.bump();
            let mut items = Vec::new();
            while matches!(cur.peek().kind, TokenKind::Word | TokenKind::AssignWord) {
                items.push(parse_word(cur, FAMILY)?);
            }
            cur.expect_operator(')')?;
            Ok(SetValue::Value(AssignValue::List(items)))
        }
        TokenKind::Word | TokenKind::AssignWord | TokenKind::Operator('=') => {
            Ok(scalar_or_read(parse_word(cur, FAMILY)?))
        }
        _ => Ok(SetValue::Value(AssignValue::Scalar(Word::new(
            vec![Segment::Literal(String::new())],
            "",
            Quoting::Unquoted,
        )))),
    }
}

/// `@ name = expr` and `@ name += expr`.
fn parse_arith(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let at = cur.bump();
    let (name, value) = match cur.peek().kind {
        TokenKind::AssignWord => {
            let t = cur.bump();
            let eq = t.lexeme.find('=').expect("assign-word has `=`");
            let name = t.lexeme[..eq].to_string();
            // The expression may continue past the assign-word (the lexer
            // splits at `(` and spaces): `@ m=(1+2)*3`, `@ n=1 + 2`.
            let mut text = t.lexeme[eq + 1..].to_string();
            text.push(' ');
            text.push_str(&gather_arith_text(cur));
            let expr = parse_arith_chars(&text, t.span.merge(cur.last_span()))?;
            (name, AssignValue::Arith(expr))
        }
        TokenKind::Word if crate::lexer::is_identifier(&cur.peek().lexeme) => {
            let name = cur.bump().lexeme;
            if cur.peek().is_op('=') {
                cur.bump();
                (name, AssignValue::Arith(parse_arith_tail(cur)?))
            } else if matches!(cur.peek().kind, TokenKind::Word) && cur.peek().lexeme == "+=" {
                cur.bump();
                (name, AssignValue::AugmentedAdd(parse_arith_tail(cur)?))
            } else {
                return Err(cur.unexpected("expected `=` or `+=`"));
            }
        }
        _ => return Err(cur.unexpected("expected a variable name after `@`")),
    };
    end_of_statement(cur, "unexpected trailing words after `@` assignment")?;
    Ok(Stmt::new(
        StmtKind::Assign { name, value },
        at.span.merge(cur.last_span()),
    ))
}

/// Gather the raw text of the rest of the statement and parse it as an
/// arithmetic expression (spacing around operators is free-form).
fn parse_arith_tail(cur: &mut Cursor) -> Result<ArithExpr, Diagnostic> {
    let start = cur.peek().span;
    let text = gather_arith_text(cur);
    parse_arith_chars(&text, start.merge(cur.last_span()))
}

/// Concatenate token lexemes up to the end of the statement; the character
/// parser deals with whatever spacing the lexer left.
fn gather_arith_text(cur: &mut Cursor) -> String {
    let mut text = String::new();
    loop {
        match cur.peek().kind {
            TokenKind::Newline | TokenKind::Comment | TokenKind::Eof | TokenKind::Operator(';') => {
                break;
            }
            _ => {
                let t = cur.bump();
                text.push_str(&t.lexeme);
                text.push(' ');
            }
        }
    }
    text
}

/// Character-level arithmetic parser: `+ - * /` with the usual precedence,
/// parentheses, integer literals and `$name` references.
pub(crate) fn parse_arith_chars(text: &str, span: Span) -> Result<ArithExpr, Diagnostic> {
    let mut p = ArithParser { chars: text.chars().collect(), pos: 0, span };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("missing arithmetic expression"));
    }
    let expr = p.parse_expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected `{}` in arithmetic expression", p.peek_char())));
    }
    Ok(expr)
}

struct ArithParser {
    chars: Vec<char>,
    pos: usize,
    span: Span,
}

impl ArithParser {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek_char(&self) -> char {
        self.chars.get(self.pos).copied().unwrap_or('\0')
    }

    fn skip_ws(&mut self) {
        while !self.at_end() && self.peek_char().is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Diagnostic {
        Diagnostic::error(codes::MALFORMED_EXPRESSION, message, self.span)
    }

    fn parse_expr(&mut self) -> Result<ArithExpr, Diagnostic> {
        let mut lhs = self.parse_term()?;
        loop {
            self.skip_ws();
            let op = match self.peek_char() {
                '+' => ArithBinOp::Add,
                '-' => ArithBinOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.parse_term()?;
            lhs = ArithExpr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) };
        }
        Ok(lhs)
    }

    fn parse_term(&mut self) -> Result<ArithExpr, Diagnostic> {
        let mut lhs = self.parse_factor()?;
        loop {
            self.skip_ws();
            let op = match self.peek_char() {
                '*' => ArithBinOp::Mul,
                '/' => ArithBinOp::Div,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.parse_factor()?;
            lhs = ArithExpr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) };
        }
        Ok(lhs)
    }

    fn parse_factor(&mut self) -> Result<ArithExpr, Diagnostic> {
        self.skip_ws();
        match self.peek_char() {
            '(' => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                self.skip_ws();
                if self.peek_char() != ')' {
                    return Err(self.error("expected `)` in arithmetic expression"));
                }
                self.pos += 1;
                Ok(inner)
            }
            '$' => {
                self.pos += 1;
                let start = self.pos;
                if self.peek_char().is_ascii_alphabetic() || self.peek_char() == '_' {
                    self.pos += 1;
                    while self.peek_char().is_ascii_alphanumeric() || self.peek_char() == '_' {
                        self.pos += 1;
                    }
                }
                if self.pos == start {
                    return Err(self.error("expected a variable name after `$`"));
                }
                Ok(ArithExpr::Var(self.chars[start..self.pos].iter().collect()))
            }
            c if c.is_ascii_digit() || (c == '-' && self.digit_follows()) => self.parse_number(),
            c if c == '\0' => Err(self.error("missing arithmetic operand")),
            c => Err(self.error(&format!("unexpected `{c}` in arithmetic expression"))),
        }
    }

    fn digit_follows(&self) -> bool {
        self.chars
            .get(self.pos + 1)
            .is_some_and(|c| c.is_ascii_digit())
    }

    fn parse_number(&mut self) -> Result<ArithExpr, Diagnostic> {
        let start = self.pos;
        if self.peek_char() == '-' {
            self.pos += 1;
        }
        while self.peek_char().is_ascii_digit() {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<i64>()
            .map(ArithExpr::Literal)
            .map_err(|_| self.error("integer literal out of range"))
    }
}

// ---------------------------------------------------------------------------
// Conditions
// ---------------------------------------------------------------------------

/// The expression between `( ... )` in `if` and `while`: a comparison,
/// a `!` negation, or a nested parenthesized expression. A parenthesized
/// expression without any comparison operator is rejected: only logical
/// conditions are in the subset.
fn parse_cond_expr(cur: &mut Cursor) -> Result<Condition, Diagnostic> {
    if matches!(cur.peek().kind, TokenKind::Word) && cur.peek().lexeme == "!" {
        cur.bump();
        return Ok(Condition::Not(Box::new(parse_cond_expr(cur)?)));
    }
    if cur.peek().is_op('(') {
        cur.bump();
        let inner = parse_cond_expr(cur)?;
        cur.expect_operator(')')?;
        return Ok(inner);
    }
    let lhs = parse_word(cur, FAMILY)?;
    let raw = parse_compare_token(cur)?;
    let rhs = parse_word(cur, FAMILY)?;
    let op = resolve_compare(raw, &lhs, &rhs);
    Ok(Condition::Compare { op, lhs, rhs })
}

/// Surface comparison operators before `==`/`!=` disambiguation.
#[derive(Clone, Copy)]
enum RawCompare {
    Gt,
    Lt,
    Ge,
    Le,
    EqLike,
    NeLike,
}

fn parse_compare_token(cur: &mut Cursor) -> Result<RawCompare, Diagnostic> {
    let t = cur.peek();
    let raw = match (&t.kind, t.lexeme.as_str()) {
        (TokenKind::Operator('>'), _) => Some(RawCompare::Gt),
        (TokenKind::Word, "<") => Some(RawCompare::Lt),
        (TokenKind::Word, ">=") => Some(RawCompare::Ge),
        (TokenKind::Word, "<=") => Some(RawCompare::Le),
        (TokenKind::Word, "==") => Some(RawCompare::EqLike),
        (TokenKind::Word, "!=") => Some(RawCompare::NeLike),
        _ => None,
    };
    match raw {
        Some(raw) => {
            cur.bump();
            Ok(raw)
        }
        None => Err(Diagnostic::error(
            codes::MALFORMED_EXPRESSION,
            format!("expected a comparison operator, found `{}`", t.lexeme),
            t.span,
        )),
    }
}

/// `==`/`!=` compare numerically when either operand is an integer literal
/// or both are variable references; otherwise they compare as strings.
fn resolve_compare(raw: RawCompare, lhs: &Word, rhs: &Word) -> CompareOp {
    let numeric = is_int_literal(lhs) || is_int_literal(rhs) || (is_var_ref(lhs) && is_var_ref(rhs));
    match raw {
        RawCompare::Gt => CompareOp::Gt,
        RawCompare::Lt => CompareOp::Lt,
        RawCompare::Ge => CompareOp::Ge,
        RawCompare::Le => CompareOp::Le,
        RawCompare::EqLike => {
            if numeric {
                CompareOp::Eq
            } else {
                CompareOp::StrEq
            }
        }
        RawCompare::NeLike => {
            if numeric {
                CompareOp::Ne
            } else {
                CompareOp::StrNe
            }
        }
    }
}

fn is_int_literal(w: &Word) -> bool {
    w.as_literal()
        .is_some_and(|s| !s.is_empty() && s.parse::<i64>().is_ok())
}

fn is_var_ref(w: &Word) -> bool {
    matches!(
        w.segments.as_slice(),
        [Segment::VarRef(_)] | [Segment::ArrayRef(..)] | [Segment::LenRef(_)]
    )
}

/// Whether a rendered `==`/`!=` with these operands would resolve as a
/// numeric comparison. The translator uses this to refuse comparisons whose
/// meaning would silently flip when respelled for this family.
pub(crate) fn equality_resolves_numeric(lhs: &Word, rhs: &Word) -> bool {
    is_int_literal(lhs) || is_int_literal(rhs) || (is_var_ref(lhs) && is_var_ref(rhs))
}

// ---------------------------------------------------------------------------
// Control flow
// ---------------------------------------------------------------------------

fn parse_if(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let open = cur.bump().span;
    let mut arms = Vec::new();
    let cond = parse_paren_condition(cur)?;
    cur.expect_keyword("then")?;
    let body = parse_block(cur, &BlockEnd::until(&["else", "endif"], "if", "endif", open))?;
    require_nonempty(&body, "a `then` branch", cur.peek().span)?;
    arms.push((cond, body));
    let mut else_block = None;
    loop {
        if !cur.is_keyword("else") {
            break;
        }
        cur.bump();
        // `else if` on the same line continues the arm chain; `else` followed
        // by a newline opens the final branch (a nested `if` there needs its
        // own `endif`, as in the real shells).
        if cur.is_keyword("if") {
            cur.bump();
            let cond = parse_paren_condition(cur)?;
            cur.expect_keyword("then")?;
            let body =
                parse_block(cur, &BlockEnd::until(&["else", "endif"], "if", "endif", open))?;
            require_nonempty(&body, "an `else if` branch", cur.peek().span)?;
            arms.push((cond, body));
        } else {
            let body = parse_block(cur, &BlockEnd::until(&["endif"], "if", "endif", open))?;
            require_nonempty(&body, "an `else` branch", cur.peek().span)?;
            else_block = Some(body);
            break;
        }
    }
    let close = cur.expect_keyword("endif")?;
    Ok(Stmt::new(StmtKind::If { arms, else_block }, open.merge(close.span)))
}

fn parse_paren_condition(cur: &mut Cursor) -> Result<Condition, Diagnostic> {
    cur.expect_operator('(')?;
    let cond = parse_cond_expr(cur)?;
    cur.expect_operator(')')?;
    Ok(cond)
}

fn parse_switch(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let open = cur.bump().span;
    cur.expect_operator('(')?;
    let subject = parse_word(cur, FAMILY)?;
    cur.expect_operator(')')?;
    let mut arms = Vec::new();
    let mut default_block = None;
    let close = loop {
        cur.skip_newlines();
        if cur.is_keyword("endsw") {
            break cur.bump();
        }
        if cur.at_eof() {
            return Err(cur.unclosed("switch", "endsw", open));
        }
        if cur.is_keyword("case") {
            if default_block.is_some() {
                return Err(cur.unexpected("expected `endsw` after `default:`"));
            }
            let mut patterns = Vec::new();
            while cur.is_keyword("case") {
                cur.bump();
                patterns.push(pattern_text(cur, FAMILY)?);
                expect_colon(cur)?;
                cur.skip_newlines();
            }
            let body = parse_block(
                cur,
                &BlockEnd::until(
                    &["case", "default", "breaksw", "endsw"],
                    "switch",
                    "endsw",
                    open,
                ),
            )?;
            let explicit_break = cur.is_keyword("breaksw");
            if explicit_break {
                cur.bump();
            }
            arms.push(CaseArm { patterns, body, explicit_break });
        } else if cur.is_keyword("default") {
            cur.bump();
            expect_colon(cur)?;
            let at = cur.peek().span;
            let body = parse_block(
                cur,
                &BlockEnd::until(
                    &["case", "default", "breaksw", "endsw"],
                    "switch",
                    "endsw",
                    open,
                ),
            )?;
            if cur.is_keyword("breaksw") {
                cur.bump();
            }
            require_nonempty(&body, "a `default:` arm", at)?;
            if default_block.is_some() {
                return Err(cur.unexpected("only one `default:` arm is allowed"));
            }
            default_block = Some(body);
        } else {
            return Err(cur.unexpected("expected `case`, `default`, or `endsw`"));
        }
    };
    Ok(Stmt::new(
        StmtKind::CaseSwitch { subject, arms, default_block },
        open.merge(close.span),
    ))
}

fn expect_colon(cur: &mut Cursor) -> Result<(), Diagnostic> {
    if matches!(cur.peek().kind, TokenKind::Word) && cur.peek().lexeme == ":" {
        cur.bump();
        Ok(())
    } else {
        Err(cur.unexpected("expected `:` after the pattern"))
    }
}

fn parse_foreach(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let open = cur.bump().span;
    let (var, _) = parse_identifier(cur)?;
    cur.expect_operator('(')?;
    let mut items = Vec::new();
    while matches!(cur.peek().kind, TokenKind::Word | TokenKind::AssignWord) {
        items.push(parse_word(cur, FAMILY)?);
    }
    cur.expect_operator(')')?;
    let body = parse_block(cur, &BlockEnd::until(&["end"], "foreach", "end", open))?;
    require_nonempty(&body, "a loop body", cur.peek().span)?;
    let close = cur.expect_keyword("end")?;
    Ok(Stmt::new(StmtKind::ForEach { var, items, body }, open.merge(close.span)))
}

fn parse_while(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let open = cur.bump().span;
    let cond = parse_paren_condition(cur)?;
    let body = parse_block(cur, &BlockEnd::until(&["end"], "while", "end", open))?;
    require_nonempty(&body, "a loop body", cur.peek().span)?;
    let close = cur.expect_keyword("end")?;
    Ok(Stmt::new(
        StmtKind::WhileLoop { cond, body, negated: false },
        open.merge(close.span),
    ))
}

/// `repeat N simple-command` — one command, no pipeline.
fn parse_repeat(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let open = cur.bump().span;
    let count = match cur.peek().kind {
        TokenKind::Word => cur.peek().lexeme.parse::<u32>().ok(),
        _ => None,
    };
    let Some(count) = count else {
        return Err(cur.unexpected("expected a repeat count"));
    };
    cur.bump();
    let (command, span) = parse_simple_command(cur, FAMILY)?;
    if cur.peek().is_op('|') {
        return Err(cur.unexpected("`repeat` takes a single simple command"));
    }
    Ok(Stmt::new(StmtKind::RepeatLoop { count, command }, open.merge(span)))
}

fn parse_alias(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let open = cur.bump().span;
    let (name, _) = parse_identifier(cur)?;
    let mut replacement = Vec::new();
    while matches!(cur.peek().kind, TokenKind::Word | TokenKind::AssignWord) {
        replacement.push(parse_word(cur, FAMILY)?);
    }
    if replacement.is_empty() {
        return Err(cur.unexpected("expected the alias replacement"));
    }
    end_of_statement(cur, "unexpected token after alias definition")?;
    Ok(Stmt::new(
        StmtKind::AliasDef { name, replacement },
        open.merge(cur.last_span()),
    ))
}

/// `unset names...` is the same builtin command in both families; the C
/// family merely reserves the word, so rebuild it as a simple command.
fn parse_unset(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let open = cur.bump().span;
    let mut argv = vec![Word::literal("unset")];
    while matches!(cur.peek().kind, TokenKind::Word | TokenKind::AssignWord) {
        argv.push(parse_word(cur, FAMILY)?);
    }
    if argv.len() == 1 {
        return Err(cur.unexpected("expected variable names after `unset`"));
    }
    end_of_statement(cur, "unexpected token after `unset`")?;
    Ok(Stmt::new(
        StmtKind::Simple(crate::ast::SimpleCommand::new(argv)),
        open.merge(cur.last_span()),
    ))
}

//! Grammar for the Bourne family (`sh`, `bash`, `ksh`, `zsh` subset).

use crate::ast::{
    AssignValue, Block, CaseArm, Condition, CompareOp, Quoting, Segment, Stmt, StmtKind, Word,
};
use crate::diag::{codes, Diagnostic};
use crate::dialect::DialectFamily;
use crate::lexer::TokenKind;

use super::{
    parse_command, parse_identifier, parse_word, pattern_text, require_nonempty, BlockEnd, Cursor,
};

const FAMILY: DialectFamily = DialectFamily::Bourne;

pub(super) fn parse(cur: &mut Cursor) -> Result<Vec<Stmt>, Diagnostic> {
    parse_block(cur, &BlockEnd::top_level())
}

fn parse_block(cur: &mut Cursor, end: &BlockEnd) -> Result<Block, Diagnostic> {
    let mut stmts = Vec::new();
    loop {
        match cur.peek().kind {
            TokenKind::Newline => {
                cur.bump();
            }
            TokenKind::Operator(';') => {
                if end.stop_double_semi && cur.at_double_semi() {
                    break;
                }
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
        TokenKind::AssignWord => parse_assign(cur),
        TokenKind::Keyword => match cur.peek().lexeme.as_str() {
            "read" => parse_read(cur),
            "export" => parse_names(cur, "export"),
            "readonly" => parse_names(cur, "readonly"),
            "if" => parse_if(cur),
            "case" => parse_case(cur),
            "for" => parse_for(cur),
            "while" => parse_while(cur, false),
            "until" => parse_while(cur, true),
            "select" => parse_select(cur),
            "break" => {
                let t = cur.bump();
                Ok(Stmt::new(StmtKind::Break, t.span))
            }
            "test" => Err(cur.unexpected("`test` is only supported as a condition")),
            other => Err(cur.unexpected(&format!("`{other}` cannot start a statement here"))),
        },
        TokenKind::Word => parse_command(cur, FAMILY),
        _ => Err(cur.unexpected("expected a statement")),
    }
}

/// `name=value` in one token. An empty value becomes the empty literal word.
fn parse_assign(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let t = cur.bump();
    let eq = t.lexeme.find('=').expect("assign-word has `=`");
    let name = t.lexeme[..eq].to_string();
    let value_text = &t.lexeme[eq + 1..];
    let word = if value_text.is_empty() {
        Word::new(vec![Segment::Literal(String::new())], "", Quoting::Unquoted)
    } else {
        crate::word::analyze_word(value_text, FAMILY, t.span)?
    };
    Ok(Stmt::new(
        StmtKind::Assign { name, value: AssignValue::Scalar(word) },
        t.span,
    ))
}

fn parse_read(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let kw = cur.bump();
    let (name, span) = parse_identifier(cur)?;
    end_of_statement(cur, "`read` takes exactly one variable name")?;
    Ok(Stmt::new(StmtKind::ReadInto { name }, kw.span.merge(span)))
}

fn parse_names(cur: &mut Cursor, which: &str) -> Result<Stmt, Diagnostic> {
    let kw = cur.bump();
    let mut names = Vec::new();
    while matches!(cur.peek().kind, TokenKind::Word) && crate::lexer::is_identifier(&cur.peek().lexeme)
    {
        names.push(cur.bump().lexeme);
    }
    if names.is_empty() {
        return Err(cur.unexpected(&format!("`{which}` expects variable names")));
    }
    end_of_statement(cur, &format!("`{which}` takes plain variable names"))?;
    let span = kw.span.merge(cur.last_span());
    let kind = if which == "export" {
        StmtKind::Export { names }
    } else {
        StmtKind::Readonly { names }
    };
    Ok(Stmt::new(kind, span))
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

fn parse_condition(cur: &mut Cursor) -> Result<Condition, Diagnostic> {
    if cur.is_keyword("test") {
        parse_test_condition(cur)
    } else if matches!(cur.peek().kind, TokenKind::Word | TokenKind::AssignWord) {
        let stmt = parse_command(cur, FAMILY)?;
        Ok(Condition::PipelineStatus(Box::new(stmt)))
    } else {
        Err(cur.unexpected("expected a condition"))
    }
}

fn parse_test_condition(cur: &mut Cursor) -> Result<Condition, Diagnostic> {
    cur.bump();
    let mut negate = false;
    if matches!(cur.peek().kind, TokenKind::Word) && cur.peek().lexeme == "!" {
        cur.bump();
        negate = true;
    }
    let lhs = parse_word(cur, FAMILY)?;
    let op = parse_test_operator(cur)?;
    let rhs = parse_word(cur, FAMILY)?;
    let cond = Condition::Compare { op, lhs, rhs };
    Ok(if negate { Condition::Not(Box::new(cond)) } else { cond })
}

fn parse_test_operator(cur: &mut Cursor) -> Result<CompareOp, Diagnostic> {
    let t = cur.peek();
    let op = match (&t.kind, t.lexeme.as_str()) {
        (TokenKind::Operator('='), _) => Some(CompareOp::StrEq),
        (TokenKind::Word, "!=") => Some(CompareOp::StrNe),
        (TokenKind::Word, "-gt") => Some(CompareOp::Gt),
        (TokenKind::Word, "-lt") => Some(CompareOp::Lt),
        (TokenKind::Word, "-ge") => Some(CompareOp::Ge),
        (TokenKind::Word, "-le") => Some(CompareOp::Le),
        (TokenKind::Word, "-eq") => Some(CompareOp::Eq),
        (TokenKind::Word, "-ne") => Some(CompareOp::Ne),
        _ => None,
    };
    match op {
        Some(op) => {
            cur.bump();
            Ok(op)
        }
        None => Err(Diagnostic::error(
            codes::UNKNOWN_TEST_OPERATOR,
            format!("`{}` is not a supported test operator", t.lexeme),
            t.span,
        )),
    }
}

fn parse_if(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let open = cur.bump().span;
    let mut arms = Vec::new();
    let cond = parse_condition(cur)?;
    cur.skip_separators();
    cur.expect_keyword("then")?;
    let body = parse_block(cur, &BlockEnd::until(&["elif", "else", "fi"], "if", "fi", open))?;
    require_nonempty(&body, "a `then` branch", cur.peek().span)?;
    arms.push((cond, body));
    while cur.is_keyword("elif") {
        cur.bump();
        let cond = parse_condition(cur)?;
        cur.skip_separators();
        cur.expect_keyword("then")?;
        let body = parse_block(cur, &BlockEnd::until(&["elif", "else", "fi"], "if", "fi", open))?;
        require_nonempty(&body, "an `elif` branch", cur.peek().span)?;
        arms.push((cond, body));
    }
    let else_block = if cur.is_keyword("else") {
        cur.bump();
        let body = parse_block(cur, &BlockEnd::until(&["fi"], "if", "fi", open))?;
        require_nonempty(&body, "an `else` branch", cur.peek().span)?;
        Some(body)
    } else {
        None
    };
    let close = cur.expect_keyword("fi")?;
    Ok(Stmt::new(StmtKind::If { arms, else_block }, open.merge(close.span)))
}

fn parse_case(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let open = cur.bump().span;
    let subject = parse_word(cur, FAMILY)?;
    cur.expect_keyword("in")?;
    let mut arms = Vec::new();
    let mut default_block = None;
    let close = loop {
        cur.skip_separators();
        if cur.is_keyword("esac") {
            break cur.bump();
        }
        if cur.at_eof() {
            return Err(cur.unclosed("case", "esac", open));
        }
        if default_block.is_some() {
            return Err(cur.unexpected("expected `esac` after the `*)` arm"));
        }
        let arm_start = cur.peek().span;
        let mut patterns = vec![pattern_text(cur, FAMILY)?];
        while cur.peek().is_op('|') {
            cur.bump();
            patterns.push(pattern_text(cur, FAMILY)?);
        }
        cur.expect_operator(')')?;
        let body = parse_block(
            cur,
            &BlockEnd {
                stop_keywords: &["esac"],
                stop_double_semi: true,
                unclosed: Some(("case", "esac", open)),
            },
        )?;
        if !cur.at_double_semi() {
            return Err(Diagnostic::error(
                codes::UNCLOSED_CONSTRUCT,
                "case arm is missing its `;;`",
                arm_start,
            ));
        }
        cur.bump();
        cur.bump();
        // Empty arm bodies are allowed: `1) ;;` matches and does nothing.
        if patterns.contains(&"*".to_string()) {
            if patterns.len() > 1 {
                return Err(Diagnostic::error(
                    codes::UNSUPPORTED_PATTERN,
                    "`*` cannot be combined with other patterns",
                    arm_start,
                ));
            }
            require_nonempty(&body, "the `*)` arm", arm_start)?;
            default_block = Some(body);
        } else {
            arms.push(CaseArm { patterns, body, explicit_break: true });
        }
    };
    Ok(Stmt::new(
        StmtKind::CaseSwitch { subject, arms, default_block },
        open.merge(close.span),
    ))
}

fn parse_for(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let open = cur.bump().span;
    let (var, _) = parse_identifier(cur)?;
    cur.expect_keyword("in")?;
    let mut items = Vec::new();
    while matches!(cur.peek().kind, TokenKind::Word | TokenKind::AssignWord) {
        items.push(parse_word(cur, FAMILY)?);
    }
    cur.skip_separators();
    cur.expect_keyword("do")?;
    let body = parse_block(cur, &BlockEnd::until(&["done"], "for", "done", open))?;
    require_nonempty(&body, "a loop body", cur.peek().span)?;
    let close = cur.expect_keyword("done")?;
    Ok(Stmt::new(StmtKind::ForEach { var, items, body }, open.merge(close.span)))
}

fn parse_while(cur: &mut Cursor, negated: bool) -> Result<Stmt, Diagnostic> {
    let open = cur.bump().span;
    let cond = parse_condition(cur)?;
    cur.skip_separators();
    cur.expect_keyword("do")?;
    let construct = if negated { "until" } else { "while" };
    let body = parse_block(cur, &BlockEnd::until(&["done"], construct, "done", open))?;
    require_nonempty(&body, "a loop body", cur.peek().span)?;
    let close = cur.expect_keyword("done")?;
    Ok(Stmt::new(StmtKind::WhileLoop { cond, body, negated }, open.merge(close.span)))
}

fn parse_select(cur: &mut Cursor) -> Result<Stmt, Diagnostic> {
    let open = cur.bump().span;
    let (var, _) = parse_identifier(cur)?;
    cur.expect_keyword("in")?;
    let mut items = Vec::new();
    while matches!(cur.peek().kind, TokenKind::Word | TokenKind::AssignWord) {
        items.push(parse_word(cur, FAMILY)?);
    }
    if items.is_empty() {
        return Err(cur.unexpected("expected menu items"));
    }
    cur.skip_separators();
    cur.expect_keyword("do")?;
    let body = parse_block(cur, &BlockEnd::until(&["done"], "select", "done", open))?;
    require_nonempty(&body, "a loop body", cur.peek().span)?;
    let close = cur.expect_keyword("done")?;
    Ok(Stmt::new(StmtKind::SelectLoop { var, items, body }, open.merge(close.span)))
}

//! Canonical source rendering for both families.
//!
//! Rendering is normalizing, not lossless: output uses four-space indents,
//! one statement per line, LF line endings, and double quotes only where a
//! word needs them. The guarantee tested throughout is that parsing the
//! rendered text yields a structurally equal tree.

use std::fmt::Write as _;

use crate::ast::*;
use crate::diag::{codes, Diagnostic};
use crate::dialect::DialectFamily;
use crate::span::Span;

const INDENT: &str = "    ";

/// Render a whole script in the given family's canonical spelling.
pub fn render_script(ast: &ScriptAst, family: DialectFamily) -> Result<String, Diagnostic> {
    let mut out = String::new();
    for stmt in &ast.statements {
        render_stmt(&mut out, stmt, family, 0)?;
    }
    Ok(out)
}

fn foreign(what: &str, family: DialectFamily, span: Span) -> Diagnostic {
    Diagnostic::error(
        codes::FOREIGN_CONSTRUCT,
        format!("{what} has no {} spelling", family.name()),
        span,
    )
}

fn push_line(out: &mut String, level: usize, text: &str) {
    for _ in 0..level {
        out.push_str(INDENT);
    }
    out.push_str(text);
    out.push('\n');
}

fn render_stmt(
    out: &mut String,
    stmt: &Stmt,
    family: DialectFamily,
    level: usize,
) -> Result<(), Diagnostic> {
    use DialectFamily::{Bourne, CFamily};
    let sp = stmt.span;
    match (&stmt.kind, family) {
        (StmtKind::Comment(text), _) => {
            push_line(out, level, &format!("#{text}"));
        }
        (StmtKind::Assign { name, value }, Bourne) => match value {
            AssignValue::Scalar(w) => {
                push_line(out, level, &format!("{name}={}", spell_word(w, family, sp)?));
            }
            AssignValue::List(_) => return Err(foreign("a list assignment", family, sp)),
            AssignValue::Arith(_) | AssignValue::AugmentedAdd(_) => {
                return Err(foreign("a numeric `@` assignment", family, sp))
            }
        },
        (StmtKind::Assign { name, value }, CFamily) => match value {
            AssignValue::Scalar(w) => {
                push_line(out, level, &format!("set {name} = {}", spell_word(w, family, sp)?));
            }
            AssignValue::List(items) => {
                let mut parts = Vec::with_capacity(items.len());
                for item in items {
                    parts.push(spell_word(item, family, sp)?);
                }
                push_line(out, level, &format!("set {name} = ( {} )", parts.join(" ")));
            }
            AssignValue::Arith(e) => {
                push_line(out, level, &format!("@ {name} = {}", spell_arith(e)));
            }
            AssignValue::AugmentedAdd(e) => {
                push_line(out, level, &format!("@ {name} += {}", spell_arith(e)));
            }
        },
        (StmtKind::ReadInto { name }, Bourne) => push_line(out, level, &format!("read {name}")),
        (StmtKind::ReadInto { name }, CFamily) => {
            push_line(out, level, &format!("set {name} = $<"))
        }
        (StmtKind::Export { names }, Bourne) => {
            push_line(out, level, &format!("export {}", names.join(" ")));
        }
        (StmtKind::Readonly { names }, Bourne) => {
            push_line(out, level, &format!("readonly {}", names.join(" ")));
        }
        (StmtKind::Export { .. }, CFamily) => return Err(foreign("`export`", family, sp)),
        (StmtKind::Readonly { .. }, CFamily) => return Err(foreign("`readonly`", family, sp)),
        (StmtKind::AliasDef { name, replacement }, CFamily) => {
            let mut parts = vec![format!("alias {name}")];
            for w in replacement {
                parts.push(spell_word(w, family, sp)?);
            }
            push_line(out, level, &parts.join(" "));
        }
        (StmtKind::AliasDef { .. }, Bourne) => return Err(foreign("`alias`", family, sp)),
        (StmtKind::Simple(cmd), _) => {
            push_line(out, level, &spell_command(cmd, family, sp)?);
        }
        (StmtKind::Pipeline(stages), _) => {
            let mut parts = Vec::with_capacity(stages.len());
            for stage in stages {
                parts.push(spell_command(stage, family, sp)?);
            }
            push_line(out, level, &parts.join(" | "));
        }
        (StmtKind::If { arms, else_block }, Bourne) => {
            for (i, (cond, body)) in arms.iter().enumerate() {
                let kw = if i == 0 { "if" } else { "elif" };
                push_line(out, level, &format!("{kw} {}", spell_cond_bourne(cond, sp)?));
                push_line(out, level, "then");
                render_block(out, body, family, level + 1)?;
            }
            if let Some(body) = else_block {
                push_line(out, level, "else");
                render_block(out, body, family, level + 1)?;
            }
            push_line(out, level, "fi");
        }
        (StmtKind::If { arms, else_block }, CFamily) => {
            for (i, (cond, body)) in arms.iter().enumerate() {
                let kw = if i == 0 { "if" } else { "else if" };
                push_line(out, level, &format!("{kw} ( {} ) then", spell_cond_c(cond, sp)?));
                render_block(out, body, family, level + 1)?;
            }
            if let Some(body) = else_block {
                push_line(out, level, "else");
                render_block(out, body, family, level + 1)?;
            }
            push_line(out, level, "endif");
        }
        (StmtKind::CaseSwitch { subject, arms, default_block }, Bourne) => {
            push_line(out, level, &format!("case {} in", spell_word(subject, family, sp)?));
            for arm in arms {
                if !arm.explicit_break {
                    return Err(foreign("a fall-through switch arm", family, sp));
                }
                let pats: Vec<String> = arm.patterns.iter().map(|p| spell_pattern(p)).collect();
                push_line(out, level, &format!("{})", pats.join("|")));
                render_block(out, &arm.body, family, level + 1)?;
                push_line(out, level + 1, ";;");
            }
            if let Some(body) = default_block {
                push_line(out, level, "*)");
                render_block(out, body, family, level + 1)?;
                push_line(out, level + 1, ";;");
            }
            push_line(out, level, "esac");
        }
        (StmtKind::CaseSwitch { subject, arms, default_block }, CFamily) => {
            push_line(out, level, &format!("switch ( {} )", spell_word(subject, family, sp)?));
            for arm in arms {
                for pat in &arm.patterns {
                    push_line(out, level, &format!("case {}:", spell_pattern(pat)));
                }
                render_block(out, &arm.body, family, level + 1)?;
                if arm.explicit_break {
                    push_line(out, level + 1, "breaksw");
                }
            }
            if let Some(body) = default_block {
                push_line(out, level, "default:");
                render_block(out, body, family, level + 1)?;
            }
            push_line(out, level, "endsw");
        }
        (StmtKind::ForEach { var, items, body }, Bourne) => {
            let mut parts = Vec::with_capacity(items.len());
            for item in items {
                parts.push(spell_word(item, family, sp)?);
            }
            push_line(out, level, &format!("for {var} in {}", parts.join(" ")));
            push_line(out, level, "do");
            render_block(out, body, family, level + 1)?;
            push_line(out, level, "done");
        }
        (StmtKind::ForEach { var, items, body }, CFamily) => {
            let mut parts = Vec::with_capacity(items.len());
            for item in items {
                parts.push(spell_word(item, family, sp)?);
            }
            push_line(out, level, &format!("foreach {var} ( {} )", parts.join(" ")));
            render_block(out, body, family, level + 1)?;
            push_line(out, level, "end");
        }
        (StmtKind::WhileLoop { cond, body, negated }, Bourne) => {
            let kw = if *negated { "until" } else { "while" };
            push_line(out, level, &format!("{kw} {}", spell_cond_bourne(cond, sp)?));
            push_line(out, level, "do");
            render_block(out, body, family, level + 1)?;
            push_line(out, level, "done");
        }
        (StmtKind::WhileLoop { cond, body, negated }, CFamily) => {
            if *negated {
                return Err(foreign("an `until` loop", family, sp));
            }
            push_line(out, level, &format!("while ( {} )", spell_cond_c(cond, sp)?));
            render_block(out, body, family, level + 1)?;
            push_line(out, level, "end");
        }
        (StmtKind::RepeatLoop { count, command }, CFamily) => {
            push_line(
                out,
                level,
                &format!("repeat {count} {}", spell_command(command, family, sp)?),
            );
        }
        (StmtKind::RepeatLoop { .. }, Bourne) => return Err(foreign("`repeat`", family, sp)),
        (StmtKind::SelectLoop { var, items, body }, Bourne) => {
            let mut parts = Vec::with_capacity(items.len());
            for item in items {
                parts.push(spell_word(item, family, sp)?);
            }
            push_line(out, level, &format!("select {var} in {}", parts.join(" ")));
            push_line(out, level, "do");
            render_block(out, body, family, level + 1)?;
            push_line(out, level, "done");
        }
        (StmtKind::SelectLoop { .. }, CFamily) => return Err(foreign("`select`", family, sp)),
        (StmtKind::Break, _) => push_line(out, level, "break"),
    }
    Ok(())
}

fn render_block(
    out: &mut String,
    block: &[Stmt],
    family: DialectFamily,
    level: usize,
) -> Result<(), Diagnostic> {
    for stmt in block {
        render_stmt(out, stmt, family, level)?;
    }
    Ok(())
}

fn spell_command(
    cmd: &SimpleCommand,
    family: DialectFamily,
    sp: Span,
) -> Result<String, Diagnostic> {
    let mut parts = Vec::with_capacity(cmd.argv.len());
    for w in &cmd.argv {
        parts.push(spell_word(w, family, sp)?);
    }
    let mut text = parts.join(" ");
    for r in &cmd.redirects {
        let _ = write!(text, " > {}", r.target);
    }
    Ok(text)
}

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

/// Spell one word, quoting only when the bare spelling would not survive a
/// re-parse (whitespace, separators, quotes, expansion characters, emptiness).
fn spell_word(word: &Word, family: DialectFamily, sp: Span) -> Result<String, Diagnostic> {
    let mut body = String::new();
    let mut literal_text = String::new();
    for seg in &word.segments {
        match seg {
            Segment::Literal(s) => {
                body.push_str(s);
                literal_text.push_str(s);
            }
            Segment::VarRef(n) => {
                let _ = write!(body, "${n}");
            }
            Segment::ArrayRef(n, i) => {
                if family == DialectFamily::Bourne {
                    return Err(foreign("an array subscript", family, sp));
                }
                let _ = write!(body, "${n}[{i}]");
            }
            Segment::LenRef(n) => {
                if family == DialectFamily::Bourne {
                    return Err(foreign("a `$#` length reference", family, sp));
                }
                let _ = write!(body, "$#{n}");
            }
            Segment::CmdSub(cmd) => {
                let _ = write!(body, "`{}`", spell_command(cmd, family, sp)?);
            }
            Segment::StdinRead => {
                if family == DialectFamily::Bourne {
                    return Err(foreign("a `$<` stdin read", family, sp));
                }
                body.push_str("$<");
            }
        }
    }
    if literal_text.contains('\n') {
        return Err(Diagnostic::error(
            codes::UNSUPPORTED_CONSTRUCT,
            "words cannot contain raw newlines",
            sp,
        ));
    }
    if !needs_quoting(word, &literal_text, &body) {
        return Ok(body);
    }
    // A word is quoted as a whole. Literals with expansion characters or
    // double quotes need single quotes; words with expansions need double
    // quotes. Both at once cannot be spelled.
    let literal_only = word
        .segments
        .iter()
        .all(|s| matches!(s, Segment::Literal(_)));
    let wants_single =
        literal_text.contains(['$', '`', '"']) || (literal_only && literal_text.contains('\\'));
    if wants_single {
        if !literal_only || literal_text.contains('\'') {
            return Err(Diagnostic::error(
                codes::UNSUPPORTED_CONSTRUCT,
                "word mixes quoting requirements that cannot be spelled",
                sp,
            ));
        }
        Ok(format!("'{literal_text}'"))
    } else {
        if body.contains('"') {
            return Err(Diagnostic::error(
                codes::UNSUPPORTED_CONSTRUCT,
                "word mixes quoting requirements that cannot be spelled",
                sp,
            ));
        }
        Ok(format!("\"{body}\""))
    }
}

/// Characters whose bare spelling would change how the word re-lexes, plus
/// glob characters, which are conventionally quoted.
fn needs_quoting(word: &Word, literal_text: &str, body: &str) -> bool {
    let empty = word.segments.is_empty()
        || word
            .segments
            .iter()
            .all(|s| matches!(s, Segment::Literal(t) if t.is_empty()));
    // A lone `:` re-lexes as itself; a colon at either edge of a longer word
    // would split off.
    let edge_colon = body.len() > 1 && (body.ends_with(':') || body.starts_with(':'));
    empty
        || edge_colon
        || literal_text.starts_with('=')
        || literal_text.contains(|c: char| {
            c.is_ascii_whitespace()
                || matches!(
                    c,
                    ';' | '|' | '(' | ')' | '<' | '>' | '#' | '"' | '\'' | '`' | '$' | '[' | ']'
                        | '*' | '?'
                )
        })
}

/// Case/switch patterns are plain strings; quote them like words when needed.
fn spell_pattern(pat: &str) -> String {
    let plain = !pat.is_empty()
        && !pat.contains(|c: char| {
            c.is_ascii_whitespace()
                || matches!(
                    c,
                    ';' | '|' | '(' | ')' | '<' | '>' | '#' | '"' | '\'' | '`' | '$' | ':'
                )
        });
    if plain {
        pat.to_string()
    } else {
        format!("\"{pat}\"")
    }
}

// ---------------------------------------------------------------------------
// Conditions and arithmetic
// ---------------------------------------------------------------------------

fn spell_cond_bourne(cond: &Condition, sp: Span) -> Result<String, Diagnostic> {
    match strip_double_not(cond) {
        Condition::Compare { op, lhs, rhs } => Ok(format!(
            "test {} {} {}",
            spell_word(lhs, DialectFamily::Bourne, sp)?,
            bourne_op(*op),
            spell_word(rhs, DialectFamily::Bourne, sp)?
        )),
        Condition::Not(inner) => match inner.as_ref() {
            Condition::Compare { op, lhs, rhs } => Ok(format!(
                "test ! {} {} {}",
                spell_word(lhs, DialectFamily::Bourne, sp)?,
                bourne_op(*op),
                spell_word(rhs, DialectFamily::Bourne, sp)?
            )),
            _ => Err(foreign("a negated command condition", DialectFamily::Bourne, sp)),
        },
        Condition::PipelineStatus(stmt) => spell_condition_command(stmt, sp),
    }
}

/// `! ! c` means `c`; collapse pairs so each family only spells single
/// negations.
fn strip_double_not(cond: &Condition) -> &Condition {
    let mut c = cond;
    while let Condition::Not(inner) = c {
        if let Condition::Not(inner2) = inner.as_ref() {
            c = inner2;
        } else {
            break;
        }
    }
    c
}

fn spell_condition_command(stmt: &Stmt, sp: Span) -> Result<String, Diagnostic> {
    match &stmt.kind {
        StmtKind::Simple(cmd) => spell_command(cmd, DialectFamily::Bourne, sp),
        StmtKind::Pipeline(stages) => {
            let mut parts = Vec::with_capacity(stages.len());
            for stage in stages {
                parts.push(spell_command(stage, DialectFamily::Bourne, sp)?);
            }
            Ok(parts.join(" | "))
        }
        _ => Err(foreign("this condition", DialectFamily::Bourne, sp)),
    }
}

fn bourne_op(op: CompareOp) -> &'static str {
    match op {
        CompareOp::Gt => "-gt",
        CompareOp::Lt => "-lt",
        CompareOp::Ge => "-ge",
        CompareOp::Le => "-le",
        CompareOp::Eq => "-eq",
        CompareOp::Ne => "-ne",
        CompareOp::StrEq => "=",
        CompareOp::StrNe => "!=",
    }
}

/// Spell a condition for `( ... )` position; the caller adds the outer
/// parentheses.
fn spell_cond_c(cond: &Condition, sp: Span) -> Result<String, Diagnostic> {
    match strip_double_not(cond) {
        Condition::Compare { op, lhs, rhs } => Ok(format!(
            "{} {} {}",
            spell_word(lhs, DialectFamily::CFamily, sp)?,
            c_op(*op),
            spell_word(rhs, DialectFamily::CFamily, sp)?
        )),
        Condition::Not(inner) => Ok(format!("! ( {} )", spell_cond_c(inner, sp)?)),
        Condition::PipelineStatus(_) => {
            Err(foreign("a command-status condition", DialectFamily::CFamily, sp))
        }
    }
}

fn c_op(op: CompareOp) -> &'static str {
    match op {
        CompareOp::Gt => ">",
        CompareOp::Lt => "<",
        CompareOp::Ge => ">=",
        CompareOp::Le => "<=",
        CompareOp::Eq | CompareOp::StrEq => "==",
        CompareOp::Ne | CompareOp::StrNe => "!=",
    }
}

fn spell_arith(expr: &ArithExpr) -> String {
    match expr {
        ArithExpr::Literal(n) => n.to_string(),
        ArithExpr::Var(name) => format!("${name}"),
        ArithExpr::Binary { op, lhs, rhs } => {
            format!(
                "{} {} {}",
                spell_arith_operand(lhs),
                op.glyph(),
                spell_arith_operand(rhs)
            )
        }
    }
}

fn spell_arith_operand(expr: &ArithExpr) -> String {
    if expr.is_atom() {
        spell_arith(expr)
    } else {
        format!("( {} )", spell_arith(expr))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dialect::DialectFamily::{Bourne, CFamily};
    use crate::parser::parse_script;

    fn roundtrip(src: &str, family: DialectFamily) -> String {
        let ast = parse_script(src, family).expect("parse");
        let rendered = render_script(&ast, family).expect("render");
        let reparsed = parse_script(&rendered, family)
            .unwrap_or_else(|e| panic!("rendered text failed to parse: {e}\n{rendered}"));
        assert_eq!(ast, reparsed, "round-trip changed the tree for:\n{rendered}");
        rendered
    }

    #[test]
    fn canonical_conditional_layout() {
        let out = roundtrip("if test $a1 -gt 1\nthen echo \"a1>1\"\nfi\n", Bourne);
        assert_eq!(out, "if test $a1 -gt 1\nthen\n    echo \"a1>1\"\nfi\n");
    }

    #[test]
    fn canonical_switch_layout() {
        let out = roundtrip(
            "switch($pilih)\ncase 1:\necho a\nbreaksw\ncase 2:\ncase 4:\necho b\nbreaksw\ndefault:\necho d\nendsw\n",
            CFamily,
        );
        assert_eq!(
            out,
            "switch ( $pilih )\ncase 1:\n    echo a\n    breaksw\ncase 2:\ncase 4:\n    echo b\n    breaksw\ndefault:\n    echo d\nendsw\n"
        );
    }

    #[test]
    fn quoting_is_minimal_and_survives_reparse() {
        let out = roundtrip("echo \"plain\" \"two words\" 'single' x\n", Bourne);
        assert_eq!(out, "echo plain \"two words\" single x\n");
    }

    #[test]
    fn var_inside_spaced_text_uses_double_quotes() {
        let out = roundtrip("echo \"var a1= $a1\"\n", Bourne);
        assert_eq!(out, "echo \"var a1= $a1\"\n");
    }

    #[test]
    fn dollar_literals_use_single_quotes() {
        let out = roundtrip("echo '$a is money'\n", Bourne);
        assert_eq!(out, "echo '$a is money'\n");
    }

    #[test]
    fn empty_assignment_value_is_quoted_empty() {
        let out = roundtrip("a=\n", Bourne);
        assert_eq!(out, "a=\"\"\n");
    }

    #[test]
    fn numeric_assignments_render_canonically() {
        let out = roundtrip("@ bil=0\n@ bil += 2\n@ m=(1+2)*3\n", CFamily);
        assert_eq!(out, "@ bil = 0\n@ bil += 2\n@ m = ( 1 + 2 ) * 3\n");
    }

    #[test]
    fn trailing_colon_words_are_quoted_for_relexing() {
        let out = roundtrip("echo namamu : $nama\n", CFamily);
        assert_eq!(out, "echo namamu : $nama\n");
        let ast = parse_script("echo \"ab:\"\n", CFamily).unwrap();
        let rendered = render_script(&ast, CFamily).unwrap();
        assert_eq!(rendered, "echo \"ab:\"\n");
    }

    #[test]
    fn until_and_select_spellings() {
        let out = roundtrip(
            "until echo $bil |grep -v \"[^0-9]\" > /dev/null\ndo\nread bil\ndone\n",
            Bourne,
        );
        assert_eq!(
            out,
            "until echo $bil | grep -v \"[^0-9]\" > /dev/null\ndo\n    read bil\ndone\n"
        );
        roundtrip(
            "select nama in Dodol Rujak exit \"Rujak\";\ndo\nbreak\ndone\n",
            Bourne,
        );
    }

    #[test]
    fn negated_conditions_render_per_family() {
        let b = roundtrip("if test ! $a -eq 1\nthen\necho x\nfi\n", Bourne);
        assert!(b.contains("test ! $a -eq 1"));
        let c = roundtrip("if ( ! ( $a == 1 ) ) then\necho x\nendif\n", CFamily);
        assert!(c.contains("if ( ! ( $a == 1 ) ) then"));
    }

    #[test]
    fn family_exclusive_constructs_refuse_to_render() {
        let cases_to_c = [
            "export a\n",
            "readonly a\n",
            "select x in a b\ndo\nbreak\ndone\n",
            "until test $a -eq 1\ndo\nread a\ndone\n",
        ];
        for src in cases_to_c {
            let ast = parse_script(src, Bourne).unwrap();
            let err = render_script(&ast, CFamily).expect_err(src);
            assert_eq!(err.code, codes::FOREIGN_CONSTRUCT, "{src}");
        }
        let cases_to_b = [
            "alias dir ls -l\n",
            "set a = ( 1 2 )\n",
            "@ n = 1\n",
            "repeat 3 echo hi\n",
            "echo $a[2]\n",
            "echo $#a\n",
            "switch ( $x )\ncase 1:\necho a\ncase 2:\necho b\nbreaksw\nendsw\n",
        ];
        for src in cases_to_b {
            let ast = parse_script(src, CFamily).unwrap();
            let err = render_script(&ast, Bourne).expect_err(src);
            assert_eq!(err.code, codes::FOREIGN_CONSTRUCT, "{src}");
        }
    }

    #[test]
    fn every_bundled_example_roundtrips_in_its_own_family() {
        let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus");
        for entry in std::fs::read_dir(root).expect("corpus directory") {
            let dir = entry.expect("dir entry").path();
            if !dir.is_dir() {
                continue;
            }
            for (file, family) in [("script.sh", Bourne), ("script.csh", CFamily)] {
                let path = dir.join(file);
                if let Ok(src) = std::fs::read_to_string(&path) {
                    let ast = parse_script(&src, family).expect("parse");
                    let rendered = render_script(&ast, family)
                        .unwrap_or_else(|e| panic!("{} failed to render: {e}", path.display()));
                    let reparsed = parse_script(&rendered, family).unwrap_or_else(|e| {
                        panic!("{} canonical text failed to reparse: {e}\n{rendered}", path.display())
                    });
                    assert_eq!(ast, reparsed, "round-trip drift for {}", path.display());
                    // Rendering is idempotent on canonical text.
                    let again = render_script(&reparsed, family).unwrap();
                    assert_eq!(rendered, again);
                }
            }
        }
    }
}

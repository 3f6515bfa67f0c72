//! Cross-family translation over the shared AST.
//!
//! Both families parse into the same statement types, so most constructs
//! translate by passing through and letting the renderer spell them in the
//! target family's surface syntax. The work done here is everything that is
//! *not* a pure respelling:
//!
//! - rewrites with no direct counterpart (`until` → `while (!…)`, `repeat`
//!   → a counter loop, `@ n += k` ↔ ``n=`expr $n + k` ``, switch
//!   fallthrough → flattened case arms, echo escape re-encoding);
//! - refusals for constructs the target family simply does not have
//!   (export/readonly/select one way, alias and list variables the other);
//! - refusals for comparisons whose meaning would silently change when
//!   respelled (the C family decides `==` numerically or textually from the
//!   shape of its operands).
//!
//! Every structural mapping is tallied by rule id in `rules_applied`;
//! exceptional rewrites add human-readable notes; refusals become
//! diagnostics in `unsupported` (errors normally, warnings in lenient mode,
//! where the offending statement is dropped instead of blocking the run).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::ast::*;
use crate::diag::{codes, Diagnostic};
use crate::dialect::DialectFamily;
use crate::evaluator::decode_echo_escapes;
use crate::parser::equality_resolves_numeric;
use crate::span::Span;

/// One explanatory note attached to a translated statement.
#[derive(Debug, Clone, Serialize)]
pub struct TranslationNote {
    pub rule_id: &'static str,
    pub text: String,
    pub span: Span,
}

/// The result of translating a script between families.
#[derive(Debug, Clone)]
pub struct TranslationReport {
    pub output_ast: ScriptAst,
    /// How many times each mapping rule fired.
    pub rules_applied: BTreeMap<&'static str, usize>,
    pub notes: Vec<TranslationNote>,
    /// Constructs with no counterpart in the target family. Errors under
    /// strict mode; warnings (with the construct dropped) under lenient.
    pub unsupported: Vec<Diagnostic>,
}

impl TranslationReport {
    /// A translation is total when nothing had to be refused or dropped.
    pub fn is_total(&self) -> bool {
        self.unsupported.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TranslateOptions {
    /// Downgrade unsupported constructs to warnings and drop them instead
    /// of refusing the translation.
    pub lenient: bool,
    /// Attach the undefined-variable caveat to every affected statement
    /// instead of only the first.
    pub pedantic: bool,
}

/// Translate a parsed script into the other family.
pub fn translate_script(
    ast: &ScriptAst,
    source: DialectFamily,
    target: DialectFamily,
    options: TranslateOptions,
) -> TranslationReport {
    let mut tr = Translator {
        target,
        options,
        rules_applied: BTreeMap::new(),
        notes: Vec::new(),
        unsupported: Vec::new(),
        caveat_done: false,
        used_names: collect_names(ast),
        rep_counter: 0,
    };
    let statements = if source == target {
        ast.statements.clone()
    } else {
        tr.block(&ast.statements)
    };
    TranslationReport {
        output_ast: ScriptAst::new(statements),
        rules_applied: tr.rules_applied,
        notes: tr.notes,
        unsupported: tr.unsupported,
    }
}

struct Translator {
    target: DialectFamily,
    options: TranslateOptions,
    rules_applied: BTreeMap<&'static str, usize>,
    notes: Vec<TranslationNote>,
    unsupported: Vec<Diagnostic>,
    caveat_done: bool,
    used_names: BTreeSet<String>,
    rep_counter: usize,
}

impl Translator {
    // -- bookkeeping ---------------------------------------------------------

    fn apply(&mut self, rule: &'static str) {
        *self.rules_applied.entry(rule).or_insert(0) += 1;
    }

    fn note(&mut self, rule: &'static str, span: Span, text: impl Into<String>) {
        self.notes.push(TranslationNote { rule_id: rule, text: text.into(), span });
    }

    /// Record an unsupported construct. Returns the statements to put in the
    /// output: the original under strict mode (the report is not total, so
    /// the output is advisory), nothing under lenient mode.
    fn refuse(&mut self, stmt: &Stmt, message: impl Into<String>) -> Vec<Stmt> {
        if self.options.lenient {
            let mut message = message.into();
            message.push_str(" — dropped (lenient mode)");
            self.unsupported
                .push(Diagnostic::warning(codes::UNSUPPORTED_CONSTRUCT, message, stmt.span));
            Vec::new()
        } else {
            self.unsupported.push(Diagnostic::error(
                codes::UNSUPPORTED_CONSTRUCT,
                message,
                stmt.span,
            ));
            vec![stmt.clone()]
        }
    }

    /// The undefined-variable caveat: expansion of an unset name is empty
    /// text in the Bourne family but a fatal error in the C family. Emitted
    /// on the first variable-bearing translated statement (every one under
    /// `--pedantic`).
    fn caveat(&mut self, span: Span, stmt: &Stmt) {
        if (self.caveat_done && !self.options.pedantic) || !stmt_mentions_vars(stmt) {
            return;
        }
        self.caveat_done = true;
        self.note(
            "caveat",
            span,
            "families disagree on undefined variables (empty text in the Bourne family, \
             a fatal error in the C family); pre-assign any name that may be unset",
        );
    }

    fn fresh_counter_name(&mut self) -> Option<String> {
        for _ in 0..1000 {
            self.rep_counter += 1;
            let name = format!("__rep{}", self.rep_counter);
            if self.used_names.insert(name.clone()) {
                return Some(name);
            }
        }
        None
    }

    // -- statements ----------------------------------------------------------

    fn block(&mut self, stmts: &[Stmt]) -> Vec<Stmt> {
        stmts.iter().flat_map(|s| self.stmt(s)).collect()
    }

    fn stmt(&mut self, stmt: &Stmt) -> Vec<Stmt> {
        let span = stmt.span;
        self.caveat(span, stmt);
        match &stmt.kind {
            StmtKind::Comment(_) | StmtKind::Break => vec![stmt.clone()],

            StmtKind::Assign { name, value } => self.assign(stmt, name, value),

            StmtKind::ReadInto { .. } => {
                self.apply("R2");
                vec![stmt.clone()]
            }

            StmtKind::Export { .. } if self.target == DialectFamily::CFamily => self.refuse(
                stmt,
                "`export` has no C-family counterpart (rule R8 lists it as one-sided)",
            ),
            StmtKind::Readonly { .. } if self.target == DialectFamily::CFamily => self.refuse(
                stmt,
                "`readonly` has no C-family counterpart (rule R8 lists it as one-sided)",
            ),
            StmtKind::SelectLoop { .. } if self.target == DialectFamily::CFamily => self.refuse(
                stmt,
                "`select` has no C-family counterpart (rule R8 lists it as one-sided)",
            ),
            StmtKind::AliasDef { .. } if self.target == DialectFamily::Bourne => self.refuse(
                stmt,
                "`alias` has no Bourne-family counterpart (rule R8 lists it as one-sided)",
            ),
            StmtKind::Export { .. }
            | StmtKind::Readonly { .. }
            | StmtKind::SelectLoop { .. }
            | StmtKind::AliasDef { .. } => vec![stmt.clone()],

            StmtKind::Simple(cmd) => self.simple_stmt(stmt, cmd),

            StmtKind::Pipeline(stages) => {
                let mut out = Vec::with_capacity(stages.len());
                for stage in stages {
                    match self.command(stmt, stage, false) {
                        Some(mut cmds) => out.append(&mut cmds),
                        None => return self.unsupported_result(stmt),
                    }
                }
                vec![Stmt::new(StmtKind::Pipeline(out), span)]
            }

            StmtKind::If { arms, else_block } => {
                self.apply("R3");
                let mut new_arms = Vec::with_capacity(arms.len());
                for (cond, body) in arms {
                    let Some(cond) = self.condition(stmt, cond) else {
                        return self.unsupported_result(stmt);
                    };
                    new_arms.push((cond, self.block(body)));
                }
                let else_block = else_block.as_ref().map(|b| self.block(b));
                let out = Stmt::new(StmtKind::If { arms: new_arms, else_block }, span);
                vec![out]
            }

            StmtKind::CaseSwitch { subject, arms, default_block } => {
                self.case_switch(stmt, subject, arms, default_block.as_deref())
            }

            StmtKind::ForEach { var, items, body } => {
                self.apply("R5");
                for item in items {
                    if !self.word_ok(stmt, item) {
                        return self.unsupported_result(stmt);
                    }
                }
                let out = Stmt::new(
                    StmtKind::ForEach {
                        var: var.clone(),
                        items: items.clone(),
                        body: self.block(body),
                    },
                    span,
                );
                vec![out]
            }

            StmtKind::WhileLoop { cond, body, negated } => {
                let Some(mut new_cond) = self.condition(stmt, cond) else {
                    return self.unsupported_result(stmt);
                };
                let mut rule = "R6";
                let mut negated = *negated;
                if negated && self.target == DialectFamily::CFamily {
                    // `until c` has no C-family spelling; run `while (! c)`.
                    rule = "R-until";
                    negated = false;
                    new_cond = Condition::Not(Box::new(new_cond));
                    self.note(
                        "R-until",
                        span,
                        "`until` became `while (! ...)`: the loops run while their \
                         condition fails, so the negation moves into the expression",
                    );
                }
                self.apply(rule);
                let out = Stmt::new(
                    StmtKind::WhileLoop { cond: new_cond, body: self.block(body), negated },
                    span,
                );
                vec![out]
            }

            StmtKind::RepeatLoop { count, command } => {
                if self.target == DialectFamily::CFamily {
                    return vec![stmt.clone()];
                }
                self.repeat_loop(stmt, *count, command)
            }
        }
    }

    /// What `stmt()` returns after a refusal was already recorded by a
    /// helper: keep the original statement (strict) or drop it (lenient).
    fn unsupported_result(&mut self, stmt: &Stmt) -> Vec<Stmt> {
        if self.options.lenient {
            Vec::new()
        } else {
            vec![stmt.clone()]
        }
    }

    // -- assignments and arithmetic -------------------------------------------

    fn assign(&mut self, stmt: &Stmt, name: &str, value: &AssignValue) -> Vec<Stmt> {
        match value {
            AssignValue::Scalar(word) => {
                if !self.word_ok(stmt, word) {
                    return self.unsupported_result(stmt);
                }
                // ``n=`expr a OP b` `` becomes the C family's `@` form.
                if self.target == DialectFamily::CFamily {
                    if let Some(stmts) = self.expr_cmdsub_to_arith(stmt, name, word) {
                        return stmts;
                    }
                }
                self.apply("R1");
                vec![stmt.clone()]
            }
            AssignValue::List(_) => {
                if self.target == DialectFamily::Bourne {
                    self.refuse(
                        stmt,
                        "list variables (`set name = ( ... )`) have no Bourne-family form",
                    )
                } else {
                    self.apply("R1");
                    vec![stmt.clone()]
                }
            }
            AssignValue::Arith(expr) => self.arith_to_bourne(stmt, name, expr, None),
            AssignValue::AugmentedAdd(expr) => {
                self.arith_to_bourne(stmt, name, expr, Some(ArithBinOp::Add))
            }
        }
    }

    /// `@ name = expr` / `@ name += expr` into Bourne spelling. A bare atom
    /// becomes a plain assignment; one binary step becomes ``name=`expr ...` ``;
    /// anything deeper has no single `expr` call and is refused.
    fn arith_to_bourne(
        &mut self,
        stmt: &Stmt,
        name: &str,
        expr: &ArithExpr,
        augment: Option<ArithBinOp>,
    ) -> Vec<Stmt> {
        let span = stmt.span;
        if self.target == DialectFamily::CFamily {
            // Already the C family's own form.
            self.apply("R-arith");
            return vec![stmt.clone()];
        }
        let value = match (augment, expr) {
            (Some(op), atom) if atom.is_atom() => {
                // `@ n += k` => n=`expr $n + k`
                Some(expr_cmdsub(&[var_operand(name), op_operand(op), atom_operand(atom)]))
            }
            (None, atom) if atom.is_atom() => {
                // `@ n = 5` / `@ n = $m` => n=5 / n=$m
                Some(AssignValue::Scalar(atom_word(atom)))
            }
            (None, ArithExpr::Binary { op, lhs, rhs }) if lhs.is_atom() && rhs.is_atom() => {
                // `@ n = a OP b` => n=`expr a OP b`
                Some(expr_cmdsub(&[
                    atom_operand(lhs),
                    op_operand(*op),
                    atom_operand(rhs),
                ]))
            }
            _ => None,
        };
        match value {
            Some(value) => {
                self.apply("R-arith");
                self.note(
                    "R-arith",
                    span,
                    format!("arithmetic assignment to `{name}` respelled with `expr`"),
                );
                let out = Stmt::new(
                    StmtKind::Assign { name: name.to_string(), value },
                    span,
                );
                vec![out]
            }
            None => self.refuse(
                stmt,
                "nested arithmetic cannot be spelled as a single `expr` call in the Bourne family",
            ),
        }
    }

    /// Recognize ``name=`expr X OP Y` `` and rewrite it to `@ name = X OP Y`
    /// (or `@ name += Y` when X is `$name` and OP is `+`). Returns `None`
    /// when the value is not that shape — the assignment then passes through.
    fn expr_cmdsub_to_arith(&mut self, stmt: &Stmt, name: &str, word: &Word) -> Option<Vec<Stmt>> {
        let span = stmt.span;
        let [Segment::CmdSub(cmd)] = word.segments.as_slice() else {
            return None;
        };
        if !cmd.redirects.is_empty() || cmd.argv.len() != 4 {
            return None;
        }
        if cmd.argv[0].as_literal() != Some("expr") {
            return None;
        }
        let lhs = word_to_atom(&cmd.argv[1])?;
        let op = glyph_to_op(cmd.argv[2].as_literal()?)?;
        let rhs = word_to_atom(&cmd.argv[3])?;
        let value = match (&lhs, op) {
            (ArithExpr::Var(v), ArithBinOp::Add) if v == name => AssignValue::AugmentedAdd(rhs),
            _ => AssignValue::Arith(ArithExpr::Binary {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            }),
        };
        self.apply("R-arith");
        self.note(
            "R-arith",
            span,
            format!("`expr` substitution respelled as an `@` assignment to `{name}`"),
        );
        let out = Stmt::new(StmtKind::Assign { name: name.to_string(), value }, span);
        Some(vec![out])
    }

    // -- case / switch ---------------------------------------------------------

    fn case_switch(
        &mut self,
        stmt: &Stmt,
        subject: &Word,
        arms: &[CaseArm],
        default_block: Option<&[Stmt]>,
    ) -> Vec<Stmt> {
        let span = stmt.span;
        self.apply("R4");
        if !self.word_ok(stmt, subject) {
            return self.unsupported_result(stmt);
        }
        let falls_through = arms.iter().any(|a| !a.explicit_break);
        let mut new_arms = Vec::with_capacity(arms.len());
        for (i, arm) in arms.iter().enumerate() {
            let (body, explicit_break) = if self.target == DialectFamily::Bourne && !arm.explicit_break {
                // `;;` always breaks, so inline everything this arm falls
                // into: the following arms up to the first `breaksw`, then
                // the default body if the fall never hit one.
                let mut flat = arm.body.clone();
                let mut broke = false;
                for next in &arms[i + 1..] {
                    flat.extend(next.body.iter().cloned());
                    if next.explicit_break {
                        broke = true;
                        break;
                    }
                }
                if !broke {
                    if let Some(d) = default_block {
                        flat.extend(d.iter().cloned());
                    }
                }
                (flat, true)
            } else {
                (arm.body.clone(), arm.explicit_break)
            };
            new_arms.push(CaseArm {
                patterns: arm.patterns.clone(),
                body: self.block(&body),
                explicit_break,
            });
        }
        if falls_through && self.target == DialectFamily::Bourne {
            self.note(
                "R4",
                span,
                "switch arms without `breaksw` fall through; their continuations were \
                 inlined because `;;` always ends a case arm",
            );
        }
        let default_block = default_block.map(|b| self.block(b));
        let out = Stmt::new(
            StmtKind::CaseSwitch { subject: subject.clone(), arms: new_arms, default_block },
            span,
        );
        vec![out]
    }

    // -- repeat ----------------------------------------------------------------

    /// `repeat N cmd` as a Bourne counter loop over a fresh variable:
    ///
    /// ```text
    /// __rep1=0
    /// while test $__rep1 -lt N
    /// do
    ///     __rep1=`expr $__rep1 + 1`
    ///     cmd
    /// done
    /// ```
    ///
    /// The increment runs first so the loop's status is the command's, as
    /// it is for `repeat`.
    fn repeat_loop(&mut self, stmt: &Stmt, count: u32, command: &SimpleCommand) -> Vec<Stmt> {
        let span = stmt.span;
        let Some(counter) = self.fresh_counter_name() else {
            self.unsupported.push(Diagnostic::error(
                codes::IDENTIFIER_COLLISION,
                "no fresh counter variable available for `repeat` (all candidates taken)",
                span,
            ));
            return self.unsupported_result(stmt);
        };
        let Some(cmd_stmts) = self.command(stmt, command, true) else {
            return self.unsupported_result(stmt);
        };
        self.apply("R-repeat");
        self.note(
            "R-repeat",
            span,
            format!(
                "`repeat {count}` became a counter loop over the synthesized variable `{counter}`"
            ),
        );
        let init = Stmt::new(
            StmtKind::Assign {
                name: counter.clone(),
                value: AssignValue::Scalar(lit_word("0")),
            },
            span,
        );
        let increment = Stmt::new(
            StmtKind::Assign {
                name: counter.clone(),
                value: expr_cmdsub(&[var_operand(&counter), op_operand(ArithBinOp::Add), lit_operand("1")]),
            },
            span,
        );
        let mut body = vec![increment];
        body.extend(cmd_stmts.into_iter().map(|c| Stmt::new(StmtKind::Simple(c), span)));
        let cond = Condition::Compare {
            op: CompareOp::Lt,
            lhs: var_word(&counter),
            rhs: lit_word(&count.to_string()),
        };
        let loop_stmt = Stmt::new(StmtKind::WhileLoop { cond, body, negated: false }, span);
        vec![init, loop_stmt]
    }

    // -- simple commands and echo -----------------------------------------------

    fn simple_stmt(&mut self, stmt: &Stmt, cmd: &SimpleCommand) -> Vec<Stmt> {
        match self.command(stmt, cmd, true) {
            Some(cmds) => cmds
                .into_iter()
                .map(|c| Stmt::new(StmtKind::Simple(c), stmt.span))
                .collect(),
            None => self.unsupported_result(stmt),
        }
    }

    /// Translate one simple command. `allow_split` permits the echo rewrite
    /// to yield several commands (statement position); inside a pipeline a
    /// split would change meaning, so embedded newlines are refused there.
    fn command(
        &mut self,
        stmt: &Stmt,
        cmd: &SimpleCommand,
        allow_split: bool,
    ) -> Option<Vec<SimpleCommand>> {
        for word in &cmd.argv {
            if !self.word_ok(stmt, word) {
                return None;
            }
        }
        if cmd.argv.first().and_then(Word::as_literal) == Some("echo") {
            return self.reencode_echo(stmt, cmd, allow_split);
        }
        Some(vec![cmd.clone()])
    }

    /// Re-encode echo arguments so the printed bytes survive the move
    /// between the two echo dialects (the C family decodes `\n`, `\t` and
    /// `\\`; the Bourne family prints them as typed).
    fn reencode_echo(
        &mut self,
        stmt: &Stmt,
        cmd: &SimpleCommand,
        allow_split: bool,
    ) -> Option<Vec<SimpleCommand>> {
        let span = stmt.span;
        match self.target {
            // Bourne → C: escape every backslash so the decoding echo
            // reproduces the bytes the Bourne echo printed verbatim.
            DialectFamily::CFamily => {
                let mut changed = false;
                let argv = cmd
                    .argv
                    .iter()
                    .map(|w| map_literals(w, |s| {
                        if s.contains('\\') {
                            changed = true;
                            s.replace('\\', "\\\\")
                        } else {
                            s.to_string()
                        }
                    }))
                    .collect();
                if changed {
                    self.apply("R-echo");
                    self.note(
                        "R-echo",
                        span,
                        "echo backslashes doubled so the C-family echo prints them as typed",
                    );
                    Some(vec![SimpleCommand { argv, redirects: cmd.redirects.clone() }])
                } else {
                    Some(vec![cmd.clone()])
                }
            }
            // C → Bourne: decode the escapes now. If that introduces
            // newlines, split into one echo per output line.
            DialectFamily::Bourne => {
                let has_escape = cmd.argv.iter().any(|w| {
                    w.segments.iter().any(|s| matches!(s, Segment::Literal(t) if t.contains('\\')))
                });
                if !has_escape {
                    return Some(vec![cmd.clone()]);
                }
                let newline_free = cmd.argv.iter().all(|w| {
                    w.segments.iter().all(|s| match s {
                        Segment::Literal(t) => !decode_echo_escapes(t).contains('\n'),
                        _ => true,
                    })
                });
                self.apply("R-echo");
                if newline_free {
                    // Tabs / backslashes only: decode in place, word
                    // structure intact.
                    let argv = cmd
                        .argv
                        .iter()
                        .map(|w| map_literals(w, |s| decode_echo_escapes(s)))
                        .collect();
                    self.note(
                        "R-echo",
                        span,
                        "echo escape sequences decoded: the Bourne echo prints bytes as typed",
                    );
                    return Some(vec![SimpleCommand { argv, redirects: cmd.redirects.clone() }]);
                }
                if !allow_split {
                    self.unsupported.push(if self.options.lenient {
                        Diagnostic::warning(
                            codes::UNSUPPORTED_CONSTRUCT,
                            "echo with an embedded `\\n` cannot be split inside a pipeline — dropped (lenient mode)",
                            span,
                        )
                    } else {
                        Diagnostic::error(
                            codes::UNSUPPORTED_CONSTRUCT,
                            "echo with an embedded `\\n` cannot be split inside a pipeline",
                            span,
                        )
                    });
                    return None;
                }
                let stmts = split_echo_lines(cmd);
                self.note(
                    "R-echo",
                    span,
                    format!(
                        "echo with embedded `\\n` split into {} statements, one per output line",
                        stmts.len()
                    ),
                );
                Some(stmts)
            }
        }
    }

    // -- conditions ---------------------------------------------------------------

    fn condition(&mut self, stmt: &Stmt, cond: &Condition) -> Option<Condition> {
        match cond {
            Condition::Compare { op, lhs, rhs } => {
                if !self.word_ok(stmt, lhs) || !self.word_ok(stmt, rhs) {
                    return None;
                }
                if self.target == DialectFamily::CFamily {
                    // The C family reads `==`/`!=` numerically or textually
                    // from the operand shapes; refuse respellings that
                    // would flip the meaning.
                    let resolves_numeric = equality_resolves_numeric(lhs, rhs);
                    let stable = match op {
                        CompareOp::Eq | CompareOp::Ne => resolves_numeric,
                        CompareOp::StrEq | CompareOp::StrNe => !resolves_numeric,
                        _ => true,
                    };
                    if !stable {
                        let (glyph, kind) = match op {
                            CompareOp::Eq => ("==", "textually"),
                            CompareOp::Ne => ("!=", "textually"),
                            CompareOp::StrEq => ("==", "numerically"),
                            CompareOp::StrNe => ("!=", "numerically"),
                            _ => unreachable!("ordering comparisons are always stable"),
                        };
                        self.unsupported.push(Diagnostic::error(
                            codes::UNSUPPORTED_CONSTRUCT,
                            format!(
                                "this comparison cannot keep its meaning: the C family \
                                 would read `{glyph}` on these operands {kind}"
                            ),
                            stmt.span,
                        ));
                        return None;
                    }
                }
                Some(cond.clone())
            }
            Condition::Not(inner) => Some(Condition::Not(Box::new(self.condition(stmt, inner)?))),
            Condition::PipelineStatus(inner) => {
                if self.target == DialectFamily::CFamily {
                    self.unsupported.push(Diagnostic::error(
                        codes::UNSUPPORTED_CONSTRUCT,
                        "command-status conditions have no C-family form in the supported subset",
                        stmt.span,
                    ));
                    return None;
                }
                Some(Condition::PipelineStatus(inner.clone()))
            }
        }
    }

    // -- word checks ----------------------------------------------------------------

    /// Check a word is expressible in the target family. Array subscripts,
    /// `$#` length references and `$<` reads exist only in the C family.
    fn word_ok(&mut self, stmt: &Stmt, word: &Word) -> bool {
        if self.target == DialectFamily::CFamily {
            return true;
        }
        for seg in &word.segments {
            let what = match seg {
                Segment::ArrayRef(..) => "array subscripts",
                Segment::LenRef(_) => "`$#` length references",
                Segment::StdinRead => "`$<` reads outside `set name = $<`",
                _ => continue,
            };
            self.unsupported.push(if self.options.lenient {
                Diagnostic::warning(
                    codes::UNSUPPORTED_CONSTRUCT,
                    format!("{what} have no Bourne-family form — statement dropped (lenient mode)"),
                    stmt.span,
                )
            } else {
                Diagnostic::error(
                    codes::UNSUPPORTED_CONSTRUCT,
                    format!("{what} have no Bourne-family form"),
                    stmt.span,
                )
            });
            return false;
        }
        true
    }
}

/// Build one echo per decoded output line. The arguments are folded into a
/// single word per line (with explicit join spaces) so the printed bytes
/// match the C-family echo exactly.
fn split_echo_lines(cmd: &SimpleCommand) -> Vec<SimpleCommand> {
    let mut args = &cmd.argv[1..];
    let suppress_newline = args.first().and_then(Word::as_literal) == Some("-n");
    if suppress_newline {
        args = &args[1..];
    }
    // One segment stream with explicit spaces at word joins.
    let mut stream: Vec<Segment> = Vec::new();
    for (i, w) in args.iter().enumerate() {
        if i > 0 {
            stream.push(Segment::Literal(" ".to_string()));
        }
        stream.extend(w.segments.iter().cloned());
    }
    // Decode and split at the newlines that decoding introduces.
    let mut lines: Vec<Vec<Segment>> = Vec::new();
    let mut current: Vec<Segment> = Vec::new();
    for seg in stream {
        match seg {
            Segment::Literal(text) => {
                let decoded = decode_echo_escapes(&text);
                for (k, piece) in decoded.split('\n').enumerate() {
                    if k > 0 {
                        lines.push(std::mem::take(&mut current));
                    }
                    if !piece.is_empty() {
                        current.push(Segment::Literal(piece.to_string()));
                    }
                }
            }
            other => current.push(other),
        }
    }
    lines.push(current);

    let last = lines.len() - 1;
    lines
        .into_iter()
        .enumerate()
        .map(|(i, segments)| {
            let mut argv = vec![lit_word("echo")];
            if i == last && suppress_newline {
                argv.push(lit_word("-n"));
            }
            if !segments.is_empty() {
                let raw: String = segments_display(&segments);
                argv.push(Word::new(segments, &raw, Quoting::Double));
            }
            SimpleCommand { argv, redirects: cmd.redirects.clone() }
        })
        .collect()
}

// -- AST construction helpers -------------------------------------------------

fn lit_word(text: &str) -> Word {
    Word::new(vec![Segment::Literal(text.to_string())], text, Quoting::Unquoted)
}

fn var_word(name: &str) -> Word {
    Word::new(
        vec![Segment::VarRef(name.to_string())],
        &format!("${name}"),
        Quoting::Unquoted,
    )
}

fn atom_word(expr: &ArithExpr) -> Word {
    match expr {
        ArithExpr::Literal(n) => lit_word(&n.to_string()),
        ArithExpr::Var(name) => var_word(name),
        ArithExpr::Binary { .. } => unreachable!("atom_word called on a non-atom"),
    }
}

/// Operand words for a synthesized `expr` command.
fn atom_operand(expr: &ArithExpr) -> Word {
    atom_word(expr)
}

fn var_operand(name: &str) -> Word {
    var_word(name)
}

fn lit_operand(text: &str) -> Word {
    lit_word(text)
}

fn op_operand(op: ArithBinOp) -> Word {
    lit_word(op.glyph())
}

/// ``name=`expr a OP b` `` — the assignment value word.
fn expr_cmdsub(operands: &[Word]) -> AssignValue {
    let mut argv = vec![lit_word("expr")];
    argv.extend(operands.iter().cloned());
    let cmd = SimpleCommand::new(argv);
    let raw = format!("`{}`", segments_display(&[Segment::CmdSub(cmd.clone())]));
    AssignValue::Scalar(Word::new(vec![Segment::CmdSub(cmd)], &raw, Quoting::Unquoted))
}

fn word_to_atom(word: &Word) -> Option<ArithExpr> {
    match word.segments.as_slice() {
        [Segment::VarRef(name)] => Some(ArithExpr::Var(name.clone())),
        [Segment::Literal(text)] => text.parse::<i64>().ok().map(ArithExpr::Literal),
        _ => None,
    }
}

fn glyph_to_op(glyph: &str) -> Option<ArithBinOp> {
    match glyph {
        "+" => Some(ArithBinOp::Add),
        "-" => Some(ArithBinOp::Sub),
        "*" => Some(ArithBinOp::Mul),
        "/" => Some(ArithBinOp::Div),
        _ => None,
    }
}

/// Rebuild a word with its literal segments mapped through `f`.
fn map_literals(word: &Word, mut f: impl FnMut(&str) -> String) -> Word {
    let segments: Vec<Segment> = word
        .segments
        .iter()
        .map(|s| match s {
            Segment::Literal(t) => Segment::Literal(f(t)),
            other => other.clone(),
        })
        .collect();
    let raw = segments_display(&segments);
    Word::new(segments, &raw, word.quoting)
}

/// A display-only lexeme for synthesized words (raw text is carried for
/// diagnostics; rendering works from the segments).
fn segments_display(segments: &[Segment]) -> String {
    let mut out = String::new();
    for seg in segments {
        match seg {
            Segment::Literal(t) => out.push_str(t),
            Segment::VarRef(n) => {
                out.push('$');
                out.push_str(n);
            }
            Segment::ArrayRef(n, i) => {
                out.push('$');
                out.push_str(n);
                out.push('[');
                out.push_str(&i.to_string());
                out.push(']');
            }
            Segment::LenRef(n) => {
                out.push_str("$#");
                out.push_str(n);
            }
            Segment::CmdSub(cmd) => {
                out.push('`');
                for (i, w) in cmd.argv.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    out.push_str(&segments_display(&w.segments));
                }
                out.push('`');
            }
            Segment::StdinRead => out.push_str("$<"),
        }
    }
    out
}

// -- name collection (for fresh-variable synthesis) -----------------------------

fn collect_names(ast: &ScriptAst) -> BTreeSet<String> {
    let mut names = BTreeSet::new();
    collect_block(&ast.statements, &mut names);
    names
}

fn collect_block(stmts: &[Stmt], names: &mut BTreeSet<String>) {
    for stmt in stmts {
        collect_stmt(stmt, names);
    }
}

fn collect_stmt(stmt: &Stmt, names: &mut BTreeSet<String>) {
    match &stmt.kind {
        StmtKind::Assign { name, value } => {
            names.insert(name.clone());
            match value {
                AssignValue::Scalar(w) => collect_word(w, names),
                AssignValue::List(ws) => ws.iter().for_each(|w| collect_word(w, names)),
                AssignValue::Arith(e) | AssignValue::AugmentedAdd(e) => collect_arith(e, names),
            }
        }
        StmtKind::ReadInto { name } => {
            names.insert(name.clone());
        }
        StmtKind::Export { names: ns } | StmtKind::Readonly { names: ns } => {
            names.extend(ns.iter().cloned());
        }
        StmtKind::AliasDef { name, replacement } => {
            names.insert(name.clone());
            replacement.iter().for_each(|w| collect_word(w, names));
        }
        StmtKind::Simple(cmd) => collect_command(cmd, names),
        StmtKind::Pipeline(stages) => stages.iter().for_each(|c| collect_command(c, names)),
        StmtKind::If { arms, else_block } => {
            for (cond, body) in arms {
                collect_condition(cond, names);
                collect_block(body, names);
            }
            if let Some(b) = else_block {
                collect_block(b, names);
            }
        }
        StmtKind::CaseSwitch { subject, arms, default_block } => {
            collect_word(subject, names);
            for arm in arms {
                collect_block(&arm.body, names);
            }
            if let Some(b) = default_block {
                collect_block(b, names);
            }
        }
        StmtKind::ForEach { var, items, body } => {
            names.insert(var.clone());
            items.iter().for_each(|w| collect_word(w, names));
            collect_block(body, names);
        }
        StmtKind::WhileLoop { cond, body, .. } => {
            collect_condition(cond, names);
            collect_block(body, names);
        }
        StmtKind::RepeatLoop { command, .. } => collect_command(command, names),
        StmtKind::SelectLoop { var, items, body } => {
            names.insert(var.clone());
            items.iter().for_each(|w| collect_word(w, names));
            collect_block(body, names);
        }
        StmtKind::Break | StmtKind::Comment(_) => {}
    }
}

fn collect_command(cmd: &SimpleCommand, names: &mut BTreeSet<String>) {
    cmd.argv.iter().for_each(|w| collect_word(w, names));
}

fn collect_condition(cond: &Condition, names: &mut BTreeSet<String>) {
    match cond {
        Condition::Compare { lhs, rhs, .. } => {
            collect_word(lhs, names);
            collect_word(rhs, names);
        }
        Condition::Not(inner) => collect_condition(inner, names),
        Condition::PipelineStatus(stmt) => collect_stmt(stmt, names),
    }
}

fn collect_word(word: &Word, names: &mut BTreeSet<String>) {
    for seg in &word.segments {
        match seg {
            Segment::VarRef(n) | Segment::ArrayRef(n, _) | Segment::LenRef(n) => {
                names.insert(n.clone());
            }
            Segment::CmdSub(cmd) => collect_command(cmd, names),
            Segment::Literal(_) | Segment::StdinRead => {}
        }
    }
}

/// Does this statement's own header mention any variables? (Used to decide
/// whether the undefined-variable caveat applies; bodies are visited as
/// their own statements.)
fn stmt_mentions_vars(stmt: &Stmt) -> bool {
    let mut names = BTreeSet::new();
    match &stmt.kind {
        StmtKind::Assign { value, .. } => match value {
            AssignValue::Scalar(w) => collect_word(w, &mut names),
            AssignValue::List(ws) => ws.iter().for_each(|w| collect_word(w, &mut names)),
            AssignValue::Arith(e) | AssignValue::AugmentedAdd(e) => collect_arith(e, &mut names),
        },
        StmtKind::Simple(cmd) => collect_command(cmd, &mut names),
        StmtKind::Pipeline(stages) => stages.iter().for_each(|c| collect_command(c, &mut names)),
        StmtKind::If { arms, .. } => {
            arms.iter().for_each(|(c, _)| collect_condition(c, &mut names));
        }
        StmtKind::CaseSwitch { subject, .. } => collect_word(subject, &mut names),
        StmtKind::ForEach { items, .. } => items.iter().for_each(|w| collect_word(w, &mut names)),
        StmtKind::WhileLoop { cond, .. } => collect_condition(cond, &mut names),
        StmtKind::RepeatLoop { command, .. } => collect_command(command, &mut names),
        _ => {}
    }
    !names.is_empty()
}

fn collect_arith(expr: &ArithExpr, names: &mut BTreeSet<String>) {
    match expr {
        ArithExpr::Literal(_) => {}
        ArithExpr::Var(n) => {
            names.insert(n.clone());
        }
        ArithExpr::Binary { lhs, rhs, .. } => {
            collect_arith(lhs, names);
            collect_arith(rhs, names);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dialect::DialectFamily::{Bourne, CFamily};
    use crate::evaluator::{execute, ExecutionConfig};
    use crate::parser::parse_script;
    use crate::renderer::render_script;

    fn translate(src: &str, from: DialectFamily, options: TranslateOptions) -> TranslationReport {
        let ast = parse_script(src, from).expect("source parses");
        translate_script(&ast, from, from.other(), options)
    }

    /// Translate, render in the target family, and reparse — the full path
    /// a user's script takes.
    fn translated_text(src: &str, from: DialectFamily) -> (TranslationReport, String) {
        let report = translate(src, from, TranslateOptions::default());
        assert!(
            report.is_total(),
            "expected a total translation, got {:?}",
            report.unsupported
        );
        let text = render_script(&report.output_ast, from.other()).expect("renders");
        parse_script(&text, from.other()).expect("rendered translation parses");
        (report, text)
    }

    /// The central property: source and translation print the same bytes
    /// and exit alike.
    fn assert_trace_equivalent(src: &str, from: DialectFamily, stdin: &str) -> TranslationReport {
        let (report, text) = translated_text(src, from);
        let src_ast = parse_script(src, from).unwrap();
        let out_ast = parse_script(&text, from.other()).unwrap();
        let a = execute(&src_ast, ExecutionConfig::new(from).with_stdin(stdin));
        let b = execute(&out_ast, ExecutionConfig::new(from.other()).with_stdin(stdin));
        assert_eq!(a.stdout_str(), b.stdout_str(), "stdout diverged for {src:?}\ntranslation:\n{text}");
        assert_eq!(a.exit_status, b.exit_status, "exit status diverged for {src:?}\ntranslation:\n{text}");
        report
    }

    #[test]
    fn empty_script_translates_to_empty() {
        let r = translate("", Bourne, TranslateOptions::default());
        assert!(r.output_ast.statements.is_empty());
        assert!(r.is_total());
        assert!(r.rules_applied.is_empty());
    }

    #[test]
    fn assignments_respell_in_both_directions() {
        let (r, text) = translated_text("bil=5\necho $bil\n", Bourne);
        assert_eq!(text, "set bil = 5\necho $bil\n");
        assert_eq!(r.rules_applied.get("R1"), Some(&1));
        let (r, text) = translated_text("set nama = halo\necho $nama\n", CFamily);
        assert_eq!(text, "nama=halo\necho $nama\n");
        assert_eq!(r.rules_applied.get("R1"), Some(&1));
    }

    #[test]
    fn read_maps_to_stdin_read_and_back() {
        let (r, text) = translated_text("read nama\n", Bourne);
        assert_eq!(text, "set nama = $<\n");
        assert_eq!(r.rules_applied.get("R2"), Some(&1));
        let (_, text) = translated_text("set nama = $<\n", CFamily);
        assert_eq!(text, "read nama\n");
        assert_trace_equivalent("read x\necho halo $x\n", Bourne, "dunia\n");
    }

    #[test]
    fn if_chains_respell_with_condition_bijection() {
        let src = "a1=0\nif test $a1 -gt 1\nthen\necho besar\nelif test $a1 -eq 0\nthen\necho nol\nelse\necho kecil\nfi\n";
        let (r, text) = translated_text(src, Bourne);
        assert!(text.contains("if ( $a1 > 1 ) then"), "text:\n{text}");
        assert!(text.contains("else if ( $a1 == 0 ) then"), "text:\n{text}");
        assert!(text.trim_end().ends_with("endif"));
        assert_eq!(r.rules_applied.get("R3"), Some(&1));
        assert_trace_equivalent(src, Bourne, "");
        // And back again.
        let c_src = "set a1 = 0\nif ( $a1 > 1 ) then\necho besar\nelse if ( $a1 == 0 ) then\necho nol\nelse\necho kecil\nendif\n";
        let (_, text) = translated_text(c_src, CFamily);
        assert!(text.contains("if test $a1 -gt 1"), "text:\n{text}");
        assert!(text.contains("elif test $a1 -eq 0"), "text:\n{text}");
        assert_trace_equivalent(c_src, CFamily, "");
    }

    #[test]
    fn every_ordering_comparison_respells_stably() {
        for (b_op, c_op) in [("-gt", ">"), ("-lt", "<"), ("-ge", ">="), ("-le", "<=")] {
            let src = format!("a=1\nif test $a {b_op} 1\nthen\necho ya\nfi\n");
            let (_, text) = translated_text(&src, Bourne);
            assert!(text.contains(&format!("( $a {c_op} 1 )")), "{b_op}: {text}");
            assert_trace_equivalent(&src, Bourne, "");
        }
    }

    #[test]
    fn unstable_equality_comparisons_are_refused_toward_c() {
        // `=` on two variables would re-resolve as numeric `==`.
        let r = translate("a=x\nb=x\nif test $a = $b\nthen\necho same\nfi\n", Bourne, TranslateOptions::default());
        assert!(!r.is_total());
        assert!(r.unsupported[0].message.contains("numerically"), "{}", r.unsupported[0].message);
        // `=` against an integer literal likewise.
        let r = translate("a=5\nif test $a = 5\nthen\necho same\nfi\n", Bourne, TranslateOptions::default());
        assert!(!r.is_total());
        // `-eq` against a non-numeric word would re-resolve as textual `==`.
        let r = translate("a=1\nif test $a -eq x\nthen\necho eq\nfi\n", Bourne, TranslateOptions::default());
        assert!(!r.is_total());
        assert!(r.unsupported[0].message.contains("textually"));
        // The stable shapes pass.
        assert_trace_equivalent("a=1\nb=2\nif test $a -eq $b\nthen\necho eq\nelse\necho ne\nfi\n", Bourne, "");
        assert_trace_equivalent("a=x\nif test $a = x\nthen\necho same\nfi\n", Bourne, "");
    }

    #[test]
    fn case_maps_to_switch_with_breaks() {
        let src = "p=2\ncase $p in\n1)\necho satu\n;;\n2|4)\necho genap\n;;\n*)\necho lain\n;;\nesac\n";
        let (r, text) = translated_text(src, Bourne);
        assert!(text.contains("switch ( $p )"), "text:\n{text}");
        assert!(text.contains("case 2:"), "text:\n{text}");
        assert!(text.contains("case 4:"), "text:\n{text}");
        assert!(text.contains("breaksw"));
        assert!(text.contains("default:"));
        assert_eq!(r.rules_applied.get("R4"), Some(&1));
        assert_trace_equivalent(src, Bourne, "");
    }

    #[test]
    fn switch_fallthrough_is_flattened_toward_bourne() {
        let src = "set x = XVAL\nswitch ($x)\ncase 1:\necho one\ncase 2:\necho two\nbreaksw\ndefault:\necho other\nendsw\n";
        for val in ["1", "2", "9"] {
            let concrete = src.replace("XVAL", val);
            let r = assert_trace_equivalent(&concrete, CFamily, "");
            assert!(r.notes.iter().any(|n| n.rule_id == "R4" && n.text.contains("fall")));
        }
        // The no-breaksw last arm falls into the default.
        let src = "set x = 2\nswitch ($x)\ncase 2:\necho two\ndefault:\necho other\nendsw\n";
        assert_trace_equivalent(src, CFamily, "");
    }

    #[test]
    fn empty_switch_arms_survive_the_trip() {
        let src = "set x = 1\nswitch ($x)\ncase 1:\nbreaksw\ndefault:\necho other\nendsw\necho after\n";
        assert_trace_equivalent(src, CFamily, "");
    }

    #[test]
    fn foreach_maps_to_for() {
        let src = "foreach nama ( Deri Arisandi )\necho $nama\nend\n";
        let (r, text) = translated_text(src, CFamily);
        assert!(text.contains("for nama in Deri Arisandi"), "text:\n{text}");
        assert!(text.contains("done"));
        assert_eq!(r.rules_applied.get("R5"), Some(&1));
        assert_trace_equivalent(src, CFamily, "");
    }

    #[test]
    fn while_loops_map_with_arithmetic() {
        let src = "bil=0\nwhile test $bil -lt 3\ndo\necho $bil\nbil=`expr $bil + 2`\ndone\n";
        let (r, text) = translated_text(src, Bourne);
        assert!(text.contains("while ( $bil < 3 )"), "text:\n{text}");
        assert!(text.contains("@ bil += 2"), "text:\n{text}");
        assert_eq!(r.rules_applied.get("R6"), Some(&1));
        assert_eq!(r.rules_applied.get("R-arith"), Some(&1));
        assert_trace_equivalent(src, Bourne, "");
        let c_src = "@ bil = 0\nwhile ($bil <3)\necho $bil\n@ bil += 2\nend\n";
        let (_, text) = translated_text(c_src, CFamily);
        assert!(text.contains("bil=`expr $bil + 2`"), "text:\n{text}");
        assert_trace_equivalent(c_src, CFamily, "");
    }

    #[test]
    fn arith_atoms_flatten_to_plain_assignments() {
        let (_, text) = translated_text("@ n = 5\n@ m = $n\n", CFamily);
        assert_eq!(text, "n=5\nm=$n\n");
        let r = translate("@ n = ( 1 + 2 ) * 3\n", CFamily, TranslateOptions::default());
        assert!(!r.is_total(), "nested arithmetic must be refused");
        assert!(r.unsupported[0].message.contains("expr"));
    }

    #[test]
    fn until_becomes_a_negated_while() {
        let src = "bil=0\nuntil test $bil -ge 3\ndo\necho $bil\nbil=`expr $bil + 1`\ndone\n";
        let (r, text) = translated_text(src, Bourne);
        assert!(text.contains("while ( ! ( $bil >= 3 ) )"), "text:\n{text}");
        assert!(r.notes.iter().any(|n| n.rule_id == "R-until"));
        assert_eq!(r.rules_applied.get("R-until"), Some(&1));
        assert_trace_equivalent(src, Bourne, "");
    }

    #[test]
    fn repeat_becomes_a_counter_loop() {
        let src = "repeat 3 echo \"gile\"\n";
        let (r, text) = translated_text(src, CFamily);
        assert!(text.contains("__rep1=0"), "text:\n{text}");
        assert!(text.contains("while test $__rep1 -lt 3"), "text:\n{text}");
        assert!(text.contains("__rep1=`expr $__rep1 + 1`"), "text:\n{text}");
        assert!(r.notes.iter().any(|n| n.rule_id == "R-repeat" && n.text.contains("__rep1")));
        assert_trace_equivalent(src, CFamily, "");
        assert_trace_equivalent("repeat 0 echo never\n", CFamily, "");
    }

    #[test]
    fn repeat_counter_avoids_taken_names() {
        let src = "set __rep1 = 9\nrepeat 2 echo hi\necho $__rep1\n";
        let (r, text) = translated_text(src, CFamily);
        assert!(text.contains("__rep2=0"), "text:\n{text}");
        assert!(r.notes.iter().any(|n| n.text.contains("__rep2")));
        assert_trace_equivalent(src, CFamily, "");
    }

    #[test]
    fn echo_newline_escape_splits_toward_bourne() {
        let src = "echo \"Universitas \\n Budi Luhur\"\n";
        let (r, text) = translated_text(src, CFamily);
        assert_eq!(text, "echo \"Universitas \"\necho \" Budi Luhur\"\n");
        assert!(r.notes.iter().any(|n| n.rule_id == "R-echo"));
        assert_trace_equivalent(src, CFamily, "");
    }

    #[test]
    fn echo_backslashes_double_toward_c() {
        let src = "echo \"Universitas \\n Budi Luhur\"\n";
        let (r, text) = translated_text(src, Bourne);
        assert_eq!(text, "echo 'Universitas \\\\n Budi Luhur'\n");
        assert!(r.notes.iter().any(|n| n.rule_id == "R-echo"));
        assert_trace_equivalent(src, Bourne, "");
    }

    #[test]
    fn echo_tabs_decode_in_place() {
        let src = "echo \"a\\tb\" c\n";
        let (_, text) = translated_text(src, CFamily);
        assert_eq!(text, "echo \"a\tb\" c\n");
        assert_trace_equivalent(src, CFamily, "");
    }

    #[test]
    fn echo_dash_n_rides_the_final_split_statement() {
        let src = "echo -n \"x\\ny\"\n";
        assert_trace_equivalent(src, CFamily, "");
        let src = "echo \"x\\n\"\n";
        let (_, text) = translated_text(src, CFamily);
        assert_eq!(text, "echo x\necho\n");
        assert_trace_equivalent(src, CFamily, "");
    }

    #[test]
    fn echo_with_variables_splits_preserving_spaces() {
        let src = "set who = dunia\necho halo \"\\n\" $who\n";
        let (_, text) = translated_text(src, CFamily);
        assert!(text.contains("echo \"halo \""), "text:\n{text}");
        assert!(text.contains("echo \" $who\""), "text:\n{text}");
        assert_trace_equivalent(src, CFamily, "");
    }

    #[test]
    fn one_sided_statements_are_refused_strictly() {
        for src in ["export a\n", "readonly a\n", "select x in a b\ndo\nbreak\ndone\n"] {
            let r = translate(src, Bourne, TranslateOptions::default());
            assert!(!r.is_total(), "{src} should not translate to the C family");
            assert!(r.unsupported[0].message.contains("R8"));
            assert_eq!(r.unsupported[0].code, codes::UNSUPPORTED_CONSTRUCT);
            // Strict mode keeps the statement so the report stays reviewable.
            assert_eq!(r.output_ast.statements.len(), parse_script(src, Bourne).unwrap().statements.len());
        }
        let r = translate("alias dir ls -l\n", CFamily, TranslateOptions::default());
        assert!(!r.is_total());
        assert!(r.unsupported[0].message.contains("R8"));
    }

    #[test]
    fn c_only_data_shapes_are_refused_toward_bourne() {
        for src in [
            "set a = ( x y z )\n",
            "set a = ( x y )\necho $a[2]\n",
            "set a = ( x y )\necho $#a\n",
        ] {
            let r = translate(src, CFamily, TranslateOptions::default());
            assert!(!r.is_total(), "{src} should not translate to the Bourne family");
        }
    }

    #[test]
    fn command_status_conditions_are_refused_toward_c() {
        let src = "until echo $bil | grep -v \"[^0-9]\" > /dev/null\ndo\nread bil\ndone\n";
        let r = translate(src, Bourne, TranslateOptions::default());
        assert!(!r.is_total());
        assert!(r.unsupported[0].message.contains("command-status"));
    }

    #[test]
    fn lenient_mode_drops_with_warnings() {
        let opts = TranslateOptions { lenient: true, ..Default::default() };
        let r = translate("export a\necho halo\n", Bourne, opts);
        assert!(!r.is_total());
        assert_eq!(r.unsupported.len(), 1);
        assert_eq!(r.unsupported[0].severity, crate::diag::Severity::Warning);
        assert!(r.unsupported[0].message.contains("dropped"));
        // The export is gone; the echo survives.
        assert_eq!(r.output_ast.statements.len(), 1);
    }

    #[test]
    fn undefined_variable_caveat_fires_once_unless_pedantic() {
        let src = "echo $a\necho $b\na=1\n";
        let r = translate(src, Bourne, TranslateOptions::default());
        let caveats = r.notes.iter().filter(|n| n.text.contains("undefined")).count();
        assert_eq!(caveats, 1);
        let r = translate(src, Bourne, TranslateOptions { pedantic: true, ..Default::default() });
        let caveats = r.notes.iter().filter(|n| n.text.contains("undefined")).count();
        assert!(caveats >= 2, "pedantic mode should repeat the caveat, got {caveats}");
    }

    #[test]
    fn double_translation_preserves_traces() {
        let src = "bil=0\nwhile test $bil -lt 6\ndo\necho tick $bil\nbil=`expr $bil + 2`\ndone\nif test $bil -eq 6\nthen\necho done\nfi\n";
        let ast = parse_script(src, Bourne).unwrap();
        let there = translate_script(&ast, Bourne, CFamily, TranslateOptions::default());
        assert!(there.is_total());
        let c_text = render_script(&there.output_ast, CFamily).unwrap();
        let c_ast = parse_script(&c_text, CFamily).unwrap();
        let back = translate_script(&c_ast, CFamily, Bourne, TranslateOptions::default());
        assert!(back.is_total());
        let b_text = render_script(&back.output_ast, Bourne).unwrap();
        let b_ast = parse_script(&b_text, Bourne).unwrap();
        let a = execute(&parse_script(src, Bourne).unwrap(), ExecutionConfig::new(Bourne));
        let b = execute(&b_ast, ExecutionConfig::new(Bourne));
        assert_eq!(a.stdout_str(), b.stdout_str());
        assert_eq!(a.exit_status, b.exit_status);
    }

    #[test]
    fn comments_and_breaks_pass_through() {
        let src = "# catatan\nfor x in a b\ndo\necho $x\nbreak\ndone\n";
        let (_, text) = translated_text(src, Bourne);
        assert!(text.contains("# catatan"));
        assert!(text.contains("break"));
        assert_trace_equivalent(src, Bourne, "");
    }
}

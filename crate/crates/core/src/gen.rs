//! Seeded random-program generators backing the differential and
//! round-trip test suites.
//!
//! Two generators live here with deliberately different envelopes:
//!
//! - [`subset_program`] builds executable programs restricted to the shared,
//!   translatable subset: every variable is assigned before first use, every
//!   loop provably terminates, every comparison keeps its numeric/textual
//!   reading across the move, and scripted stdin covers every read. Such a
//!   program and its translation must print identical bytes and exit alike.
//! - [`family_ast`] builds trees over one family's full renderable surface
//!   (including one-sided constructs such as `export`, `alias`, lists, and
//!   `repeat`) for parse/render round-trip checks; these trees are not meant
//!   to be executed.
//!
//! Both are pure functions of their seed, so failures reproduce exactly.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::ast::*;
use crate::dialect::DialectFamily;
use crate::span::Span;

/// A generated source program plus the stdin script it expects.
#[derive(Debug, Clone)]
pub struct GeneratedProgram {
    pub family: DialectFamily,
    pub ast: ScriptAst,
    pub stdin: String,
}

/// Generate one executable program in the translatable shared subset.
pub fn subset_program(seed: u64) -> GeneratedProgram {
    let mut rng = StdRng::seed_from_u64(seed);
    let family = if rng.gen_bool(0.5) {
        DialectFamily::Bourne
    } else {
        DialectFamily::CFamily
    };
    let mut g = ProgramGen {
        rng,
        family,
        num_vars: Vec::new(),
        text_vars: Vec::new(),
        stdin: Vec::new(),
        next_name: 0,
        protected: None,
        speculative: false,
    };
    let len = g.rng.gen_range(3..=8);
    let mut statements = Vec::with_capacity(len + 2);
    for _ in 0..len {
        g.top_stmt(&mut statements);
    }
    GeneratedProgram {
        family,
        ast: ScriptAst::new(statements),
        stdin: g
            .stdin
            .iter()
            .map(|l| format!("{l}\n"))
            .collect::<String>(),
    }
}

/// Generate one renderable tree over the full surface of `family`.
pub fn family_ast(seed: u64, family: DialectFamily) -> ScriptAst {
    let mut g = TreeGen { rng: StdRng::seed_from_u64(seed), family, next_name: 0 };
    let len = g.rng.gen_range(1..=6);
    let statements = (0..len).map(|_| g.stmt(2)).collect();
    ScriptAst::new(statements)
}

// ---------------------------------------------------------------------------
// Shared word builders
// ---------------------------------------------------------------------------

fn sp() -> Span {
    Span::zero()
}

fn lit_word(text: &str) -> Word {
    Word::new(vec![Segment::Literal(text.to_string())], text, Quoting::Unquoted)
}

fn var_word(name: &str) -> Word {
    Word::new(
        vec![Segment::VarRef(name.to_string())],
        format!("${name}"),
        Quoting::Unquoted,
    )
}

fn word_from(segments: Vec<Segment>) -> Word {
    let mut raw = String::new();
    for seg in &segments {
        match seg {
            Segment::Literal(t) => raw.push_str(t),
            Segment::VarRef(n) => raw.push_str(&format!("${n}")),
            Segment::ArrayRef(n, i) => raw.push_str(&format!("${n}[{i}]")),
            Segment::LenRef(n) => raw.push_str(&format!("$#{n}")),
            Segment::CmdSub(_) => raw.push_str("`...`"),
            Segment::StdinRead => raw.push_str("$<"),
        }
    }
    Word::new(segments, raw, Quoting::Unquoted)
}

fn echo_cmd(args: Vec<Word>) -> SimpleCommand {
    let mut argv = vec![lit_word("echo")];
    argv.extend(args);
    SimpleCommand::new(argv)
}

// ---------------------------------------------------------------------------
// Executable subset programs
// ---------------------------------------------------------------------------

struct ProgramGen {
    rng: StdRng,
    family: DialectFamily,
    /// Variables currently holding integer text.
    num_vars: Vec<String>,
    /// Variables currently holding non-numeric text.
    text_vars: Vec<String>,
    stdin: Vec<String>,
    next_name: usize,
    /// A loop counter that statements inside that loop must not reassign.
    protected: Option<String>,
    /// Inside a block whose execution is not guaranteed. Assignments there
    /// must not change the numeric/text type of an outer variable: on the
    /// path where the block is skipped, later statements still see the old
    /// type, and the families disagree on what a type mismatch does.
    speculative: bool,
}

const TEXT_POOL: &[&str] = &[
    "halo", "dunia", "budi", "luhur", "dodol", "garut", "jakarta", "fakultas",
];

impl ProgramGen {
    fn fresh_name(&mut self) -> String {
        self.next_name += 1;
        format!("v{}", self.next_name)
    }

    fn small_int(&mut self) -> i64 {
        self.rng.gen_range(0..=20)
    }

    fn text_atom(&mut self) -> String {
        (*TEXT_POOL.choose(&mut self.rng).unwrap()).to_string()
    }

    /// A bound numeric variable, if any.
    fn num_var(&mut self) -> Option<String> {
        self.num_vars.choose(&mut self.rng).cloned()
    }

    fn text_var(&mut self) -> Option<String> {
        self.text_vars.choose(&mut self.rng).cloned()
    }

    fn bind_num(&mut self, name: &str) {
        self.text_vars.retain(|v| v != name);
        if !self.num_vars.iter().any(|v| v == name) {
            self.num_vars.push(name.to_string());
        }
    }

    fn bind_text(&mut self, name: &str) {
        self.num_vars.retain(|v| v != name);
        if !self.text_vars.iter().any(|v| v == name) {
            self.text_vars.push(name.to_string());
        }
    }

    /// A name the caller will bind with a value of the given type: usually
    /// fresh, sometimes an existing binding — but never the active loop
    /// counter, and in speculative blocks never a binding of the other type.
    fn assign_target(&mut self, numeric: bool) -> String {
        if self.rng.gen_bool(0.3) {
            let pool: Vec<String> = if self.speculative {
                let same = if numeric { &self.num_vars } else { &self.text_vars };
                same.iter()
                    .filter(|v| Some(v.as_str()) != self.protected.as_deref())
                    .cloned()
                    .collect()
            } else {
                self.num_vars
                    .iter()
                    .chain(self.text_vars.iter())
                    .filter(|v| Some(v.as_str()) != self.protected.as_deref())
                    .cloned()
                    .collect()
            };
            if let Some(name) = pool.choose(&mut self.rng) {
                return name.clone();
            }
        }
        self.fresh_name()
    }

    // -- statements -----------------------------------------------------------

    fn top_stmt(&mut self, out: &mut Vec<Stmt>) {
        match self.rng.gen_range(0..12) {
            0 | 1 => out.push(self.assign_stmt()),
            2 => out.push(self.read_stmt()),
            3 | 4 => out.push(self.echo_stmt()),
            5 => out.push(self.if_stmt()),
            6 => out.push(self.case_stmt()),
            7 => self.while_loop(out),
            8 => out.push(self.for_loop()),
            9 => {
                if self.family == DialectFamily::CFamily {
                    out.push(self.repeat_stmt());
                } else {
                    self.until_loop(out);
                }
            }
            10 => out.push(self.pipeline_stmt()),
            _ => out.push(Stmt::new(
                StmtKind::Comment(format!(" catatan {}", self.small_int())),
                sp(),
            )),
        }
    }

    /// A statement lawful inside a block. `in_loop` permits `break`.
    fn body_stmt(&mut self, in_loop: bool) -> Stmt {
        match self.rng.gen_range(0..8) {
            0 | 1 => self.assign_stmt(),
            2 | 3 | 4 => self.echo_stmt(),
            5 if in_loop && self.rng.gen_bool(0.4) => Stmt::new(StmtKind::Break, sp()),
            6 => Stmt::new(StmtKind::Comment(" selesai".to_string()), sp()),
            _ => self.echo_stmt(),
        }
    }

    /// Generate a block whose execution is not guaranteed. Bindings made
    /// inside must not leak into the generator's environment: a later
    /// reference to a name only conditionally assigned would be undefined at
    /// runtime on some paths, and the families disagree on undefined names.
    fn body(&mut self, in_loop: bool) -> Vec<Stmt> {
        let saved_num = self.num_vars.clone();
        let saved_text = self.text_vars.clone();
        let saved_spec = self.speculative;
        self.speculative = true;
        let len = self.rng.gen_range(1..=3);
        let body = (0..len).map(|_| self.body_stmt(in_loop)).collect();
        self.num_vars = saved_num;
        self.text_vars = saved_text;
        self.speculative = saved_spec;
        body
    }

    fn assign_stmt(&mut self) -> Stmt {
        match self.rng.gen_range(0..4) {
            // Integer literal.
            0 => {
                let name = self.assign_target(true);
                self.bind_num(&name);
                let n = self.small_int();
                Stmt::new(
                    StmtKind::Assign {
                        name,
                        value: AssignValue::Scalar(lit_word(&n.to_string())),
                    },
                    sp(),
                )
            }
            // Plain text.
            1 => {
                let name = self.assign_target(false);
                self.bind_text(&name);
                let t = self.text_atom();
                Stmt::new(
                    StmtKind::Assign {
                        name,
                        value: AssignValue::Scalar(lit_word(&t)),
                    },
                    sp(),
                )
            }
            // Copy of another variable.
            2 => {
                let (value, numeric) = match (self.num_var(), self.text_var()) {
                    (Some(v), _) if self.rng.gen_bool(0.6) => (var_word(&v), true),
                    (_, Some(v)) => (var_word(&v), false),
                    (Some(v), None) => (var_word(&v), true),
                    (None, None) => (lit_word("kosong"), false),
                };
                let name = self.assign_target(numeric);
                if numeric {
                    self.bind_num(&name);
                } else {
                    self.bind_text(&name);
                }
                Stmt::new(
                    StmtKind::Assign { name, value: AssignValue::Scalar(value) },
                    sp(),
                )
            }
            // Arithmetic, spelled per family.
            _ => {
                let name = self.assign_target(true);
                let stmt = self.arith_assign(&name);
                self.bind_num(&name);
                stmt
            }
        }
    }

    fn arith_operand(&mut self) -> ArithExpr {
        match self.num_var() {
            Some(v) if self.rng.gen_bool(0.5) => ArithExpr::Var(v),
            _ => ArithExpr::Literal(self.small_int()),
        }
    }

    fn arith_assign(&mut self, name: &str) -> Stmt {
        let op = *[ArithBinOp::Add, ArithBinOp::Sub, ArithBinOp::Mul, ArithBinOp::Div]
            .choose(&mut self.rng)
            .unwrap();
        let lhs = self.arith_operand();
        // Keep divisions well-defined.
        let rhs = if op == ArithBinOp::Div {
            ArithExpr::Literal(self.rng.gen_range(1..=9))
        } else {
            self.arith_operand()
        };
        // `n += k` needs `n` itself already numeric.
        let augment = self.rng.gen_bool(0.3) && self.num_vars.iter().any(|v| v == name);
        self.spell_arith_assign(name, op, lhs, rhs, augment)
    }

    /// Spell an arithmetic assignment in the source family's own idiom:
    /// an `@` form for the C family, an `expr` substitution for Bourne.
    fn spell_arith_assign(
        &mut self,
        name: &str,
        op: ArithBinOp,
        lhs: ArithExpr,
        rhs: ArithExpr,
        augment: bool,
    ) -> Stmt {
        if self.family == DialectFamily::CFamily {
            let value = if augment {
                AssignValue::AugmentedAdd(rhs)
            } else {
                AssignValue::Arith(ArithExpr::Binary {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                })
            };
            return Stmt::new(StmtKind::Assign { name: name.to_string(), value }, sp());
        }
        let (lhs, op) = if augment {
            (ArithExpr::Var(name.to_string()), ArithBinOp::Add)
        } else {
            (lhs, op)
        };
        let argv = vec![
            lit_word("expr"),
            arith_atom_word(&lhs),
            lit_word(op.glyph()),
            arith_atom_word(&rhs),
        ];
        let word = word_from(vec![Segment::CmdSub(SimpleCommand::new(argv))]);
        Stmt::new(
            StmtKind::Assign { name: name.to_string(), value: AssignValue::Scalar(word) },
            sp(),
        )
    }

    fn read_stmt(&mut self) -> Stmt {
        let numeric = self.rng.gen_bool(0.5);
        let name = self.assign_target(numeric);
        if numeric {
            let n = self.small_int();
            self.stdin.push(n.to_string());
            self.bind_num(&name);
        } else {
            let t = self.text_atom();
            self.stdin.push(t);
            self.bind_text(&name);
        }
        Stmt::new(StmtKind::ReadInto { name }, sp())
    }

    fn echo_stmt(&mut self) -> Stmt {
        let mut args = Vec::new();
        if self.rng.gen_bool(0.1) {
            args.push(lit_word("-n"));
        }
        let n = self.rng.gen_range(1..=3);
        for _ in 0..n {
            args.push(self.echo_arg());
        }
        let mut cmd = echo_cmd(args);
        if self.rng.gen_bool(0.1) {
            cmd.redirects.push(Redirect { target: "/tmp/keluaran.txt".to_string() });
        }
        Stmt::new(StmtKind::Simple(cmd), sp())
    }

    fn echo_arg(&mut self) -> Word {
        match self.rng.gen_range(0..8) {
            0 | 1 => lit_word(&self.text_atom()),
            2 => {
                let text = format!("{} {}", self.text_atom(), self.text_atom());
                lit_word(&text)
            }
            // Escape sequences: the C-family echo decodes them, so they are
            // exactly what the echo re-encoding rule must preserve.
            3 => {
                let esc = ["\\n", "\\t", "\\\\"].choose(&mut self.rng).unwrap();
                lit_word(&format!("{}{esc}{}", self.text_atom(), self.text_atom()))
            }
            4 => match self.num_var().or_else(|| self.text_var()) {
                Some(v) => var_word(&v),
                None => lit_word(&self.text_atom()),
            },
            5 => {
                // Literal text around a variable.
                match self.num_var().or_else(|| self.text_var()) {
                    Some(v) => word_from(vec![
                        Segment::Literal(format!("{}=", self.text_atom())),
                        Segment::VarRef(v),
                    ]),
                    None => lit_word(&self.text_atom()),
                }
            }
            6 if self.rng.gen_bool(0.4) => {
                // A small `expr` substitution.
                let lhs = self.arith_operand();
                let rhs = ArithExpr::Literal(self.rng.gen_range(1..=9));
                let argv = vec![
                    lit_word("expr"),
                    arith_atom_word(&lhs),
                    lit_word("+"),
                    arith_atom_word(&rhs),
                ];
                word_from(vec![Segment::CmdSub(SimpleCommand::new(argv))])
            }
            _ => lit_word(&self.small_int().to_string()),
        }
    }

    /// A comparison whose numeric/textual reading is the same in both
    /// families, so translation cannot flip its meaning.
    fn condition(&mut self) -> Condition {
        let cmp = if self.rng.gen_bool(0.7) {
            // Numeric: every operand is an integer literal or a
            // numerically-bound variable.
            let op = *[
                CompareOp::Gt,
                CompareOp::Lt,
                CompareOp::Ge,
                CompareOp::Le,
                CompareOp::Eq,
                CompareOp::Ne,
            ]
            .choose(&mut self.rng)
            .unwrap();
            let lhs = match self.num_var() {
                Some(v) => var_word(&v),
                None => lit_word(&self.small_int().to_string()),
            };
            let rhs = lit_word(&self.small_int().to_string());
            Condition::Compare { op, lhs, rhs }
        } else {
            // Textual: at least one side is a non-numeric literal, and never
            // both sides variables (two bare variables read numerically in
            // the C family).
            let op = if self.rng.gen_bool(0.5) { CompareOp::StrEq } else { CompareOp::StrNe };
            let lhs = match self.text_var() {
                Some(v) if self.rng.gen_bool(0.7) => var_word(&v),
                _ => lit_word(&self.text_atom()),
            };
            let rhs = lit_word(&self.text_atom());
            Condition::Compare { op, lhs, rhs }
        };
        if self.rng.gen_bool(0.15) {
            Condition::Not(Box::new(cmp))
        } else {
            cmp
        }
    }

    fn if_stmt(&mut self) -> Stmt {
        let arm_count = self.rng.gen_range(1..=2);
        let mut arms = Vec::with_capacity(arm_count);
        for _ in 0..arm_count {
            let cond = self.condition();
            arms.push((cond, self.body(false)));
        }
        let else_block = if self.rng.gen_bool(0.5) { Some(self.body(false)) } else { None };
        Stmt::new(StmtKind::If { arms, else_block }, sp())
    }

    fn case_stmt(&mut self) -> Stmt {
        // Subject: a bound variable when available, else a literal.
        let (subject, numeric) = match (self.num_var(), self.text_var()) {
            (Some(v), _) if self.rng.gen_bool(0.6) => (var_word(&v), true),
            (_, Some(v)) => (var_word(&v), false),
            (Some(v), None) => (var_word(&v), true),
            (None, None) => (lit_word("2"), true),
        };
        let mut pattern_pool: Vec<String> = if numeric {
            (0..=9).map(|n| n.to_string()).collect()
        } else {
            TEXT_POOL.iter().map(|t| t.to_string()).collect()
        };
        pattern_pool.shuffle(&mut self.rng);
        let arm_count = self.rng.gen_range(1..=3);
        let mut arms = Vec::with_capacity(arm_count);
        for _ in 0..arm_count {
            let pat_count = self.rng.gen_range(1..=2).min(pattern_pool.len());
            let patterns: Vec<String> = pattern_pool.drain(..pat_count).collect();
            if patterns.is_empty() {
                break;
            }
            // Fallthrough (no break) exists only in the C family's syntax.
            let explicit_break =
                self.family == DialectFamily::Bourne || self.rng.gen_bool(0.7);
            let body = if self.rng.gen_bool(0.2) { Vec::new() } else { self.body(false) };
            arms.push(CaseArm { patterns, body, explicit_break });
        }
        let default_block = if self.rng.gen_bool(0.6) { Some(self.body(false)) } else { None };
        Stmt::new(
            StmtKind::CaseSwitch { subject, arms, default_block },
            sp(),
        )
    }

    /// `c=0; while c < bound: body...; c += step` — strictly increasing, so
    /// it always terminates.
    fn while_loop(&mut self, out: &mut Vec<Stmt>) {
        let counter = self.fresh_name();
        out.push(Stmt::new(
            StmtKind::Assign {
                name: counter.clone(),
                value: AssignValue::Scalar(lit_word("0")),
            },
            sp(),
        ));
        self.bind_num(&counter);
        let bound = self.rng.gen_range(1..=6);
        let step = self.rng.gen_range(1..=2);
        let op = if self.rng.gen_bool(0.5) { CompareOp::Lt } else { CompareOp::Le };
        let cond = Condition::Compare {
            op,
            lhs: var_word(&counter),
            rhs: lit_word(&bound.to_string()),
        };
        let body = self.counted_body(&counter, step);
        out.push(Stmt::new(StmtKind::WhileLoop { cond, body, negated: false }, sp()));
    }

    /// Bourne-only: `until c >= bound` over the same counter scheme.
    fn until_loop(&mut self, out: &mut Vec<Stmt>) {
        let counter = self.fresh_name();
        out.push(Stmt::new(
            StmtKind::Assign {
                name: counter.clone(),
                value: AssignValue::Scalar(lit_word("0")),
            },
            sp(),
        ));
        self.bind_num(&counter);
        let bound = self.rng.gen_range(1..=6);
        let op = if self.rng.gen_bool(0.5) { CompareOp::Ge } else { CompareOp::Gt };
        let cond = Condition::Compare {
            op,
            lhs: var_word(&counter),
            rhs: lit_word(&bound.to_string()),
        };
        let body = self.counted_body(&counter, 1);
        out.push(Stmt::new(StmtKind::WhileLoop { cond, body, negated: true }, sp()));
    }

    /// A loop body ending in `counter = counter + step`, with the counter
    /// shielded from reassignment by anything generated in between.
    fn counted_body(&mut self, counter: &str, step: i64) -> Vec<Stmt> {
        let saved = self.protected.replace(counter.to_string());
        let mut body = Vec::new();
        let extras = self.rng.gen_range(0..=2);
        for _ in 0..extras {
            // No `break`: an early exit is fine semantically, but the loop is
            // clearer to debug when iteration count is seed-determined.
            body.push(match self.rng.gen_range(0..3) {
                0 => self.assign_stmt(),
                _ => self.echo_stmt(),
            });
        }
        body.push(self.spell_arith_assign(
            counter,
            ArithBinOp::Add,
            ArithExpr::Var(counter.to_string()),
            ArithExpr::Literal(step),
            true,
        ));
        self.protected = saved;
        body
    }

    fn for_loop(&mut self) -> Stmt {
        let var = self.fresh_name();
        let count = self.rng.gen_range(1..=4);
        let numeric = self.rng.gen_bool(0.4);
        let items: Vec<Word> = (0..count)
            .map(|_| {
                if numeric {
                    lit_word(&self.small_int().to_string())
                } else {
                    lit_word(&self.text_atom())
                }
            })
            .collect();
        if numeric {
            self.bind_num(&var);
        } else {
            self.bind_text(&var);
        }
        let body = self.body(true);
        Stmt::new(StmtKind::ForEach { var, items, body }, sp())
    }

    fn repeat_stmt(&mut self) -> Stmt {
        let count = self.rng.gen_range(0..=4);
        let n = self.rng.gen_range(1..=2);
        let args = (0..n).map(|_| self.echo_arg()).collect();
        Stmt::new(StmtKind::RepeatLoop { count, command: echo_cmd(args) }, sp())
    }

    /// `echo ... | grep [-v] pattern` — both stages are builtins with
    /// identical behavior in both families.
    fn pipeline_stmt(&mut self) -> Stmt {
        let n = self.rng.gen_range(1..=3);
        let args = (0..n)
            .map(|_| {
                // No escape sequences: a stage that had to split into several
                // statements could not stay inside a pipeline.
                match self.rng.gen_range(0..3) {
                    0 => lit_word(&self.text_atom()),
                    1 => match self.num_var().or_else(|| self.text_var()) {
                        Some(v) => var_word(&v),
                        None => lit_word(&self.text_atom()),
                    },
                    _ => lit_word(&self.small_int().to_string()),
                }
            })
            .collect();
        let mut grep_argv = vec![lit_word("grep")];
        if self.rng.gen_bool(0.3) {
            grep_argv.push(lit_word("-v"));
        }
        grep_argv.push(lit_word(&self.text_atom()));
        let stages = vec![echo_cmd(args), SimpleCommand::new(grep_argv)];
        Stmt::new(StmtKind::Pipeline(stages), sp())
    }
}

fn arith_atom_word(expr: &ArithExpr) -> Word {
    match expr {
        ArithExpr::Literal(n) => lit_word(&n.to_string()),
        ArithExpr::Var(v) => var_word(v),
        ArithExpr::Binary { .. } => unreachable!("atoms only"),
    }
}

// ---------------------------------------------------------------------------
// Full-surface trees for round-trip checks
// ---------------------------------------------------------------------------

struct TreeGen {
    rng: StdRng,
    family: DialectFamily,
    next_name: usize,
}

impl TreeGen {
    fn fresh_name(&mut self) -> String {
        self.next_name += 1;
        format!("n{}", self.next_name)
    }

    fn ident(&mut self) -> String {
        if self.rng.gen_bool(0.5) {
            self.fresh_name()
        } else {
            (*["bil", "nama", "pilih", "a1", "hasil"].choose(&mut self.rng).unwrap()).to_string()
        }
    }

    fn stmt(&mut self, depth: usize) -> Stmt {
        let leaf_only = depth == 0;
        let choice = self.rng.gen_range(0..14);
        match choice {
            0 | 1 => self.assign(),
            2 => Stmt::new(StmtKind::ReadInto { name: self.ident() }, sp()),
            3 => self.family_statement(),
            4 => Stmt::new(StmtKind::Simple(self.command(true)), sp()),
            5 => {
                let stages = vec![self.command(false), self.command(false)];
                Stmt::new(StmtKind::Pipeline(stages), sp())
            }
            6 if !leaf_only => self.if_stmt(depth),
            7 if !leaf_only => self.case_stmt(depth),
            8 if !leaf_only => {
                let body = self.block(depth - 1, true);
                Stmt::new(
                    StmtKind::ForEach { var: self.ident(), items: self.words(1, 3), body },
                    sp(),
                )
            }
            9 if !leaf_only => self.while_stmt(depth),
            10 => Stmt::new(StmtKind::Comment(format!(" baris {}", self.next_name)), sp()),
            _ => Stmt::new(StmtKind::Simple(self.command(true)), sp()),
        }
    }

    fn block(&mut self, depth: usize, in_loop: bool) -> Vec<Stmt> {
        let len = self.rng.gen_range(1..=3);
        let mut body: Vec<Stmt> = (0..len).map(|_| self.stmt(depth)).collect();
        if in_loop && self.rng.gen_bool(0.2) {
            body.push(Stmt::new(StmtKind::Break, sp()));
        }
        body
    }

    fn assign(&mut self) -> Stmt {
        let name = self.ident();
        let value = match self.family {
            DialectFamily::Bourne => AssignValue::Scalar(self.word()),
            DialectFamily::CFamily => match self.rng.gen_range(0..4) {
                0 => AssignValue::Scalar(self.scalar_value_word()),
                1 => AssignValue::List(self.words(1, 4)),
                2 => AssignValue::Arith(self.arith(1)),
                _ => AssignValue::AugmentedAdd(self.arith(0)),
            },
        };
        Stmt::new(StmtKind::Assign { name, value }, sp())
    }

    /// A scalar assignment value. A bare `$<` is excluded: `set n = $<` is
    /// the read form, so it would re-parse as a different statement kind.
    fn scalar_value_word(&mut self) -> Word {
        loop {
            let w = self.word();
            if !w.is_stdin_read() {
                return w;
            }
        }
    }

    /// One-sided statements: `export`/`readonly`/`select` for Bourne,
    /// `alias`/`repeat` for the C family.
    fn family_statement(&mut self) -> Stmt {
        match self.family {
            DialectFamily::Bourne => match self.rng.gen_range(0..3) {
                0 => Stmt::new(StmtKind::Export { names: vec![self.ident()] }, sp()),
                1 => Stmt::new(
                    StmtKind::Readonly { names: vec![self.ident(), self.ident()] },
                    sp(),
                ),
                _ => {
                    let body = vec![
                        Stmt::new(StmtKind::Simple(self.command(true)), sp()),
                        Stmt::new(StmtKind::Break, sp()),
                    ];
                    Stmt::new(
                        StmtKind::SelectLoop {
                            var: self.ident(),
                            items: self.words(1, 3),
                            body,
                        },
                        sp(),
                    )
                }
            },
            DialectFamily::CFamily => match self.rng.gen_range(0..2) {
                0 => Stmt::new(
                    StmtKind::AliasDef { name: self.ident(), replacement: self.words(1, 3) },
                    sp(),
                ),
                _ => Stmt::new(
                    StmtKind::RepeatLoop {
                        count: self.rng.gen_range(0..=5),
                        command: self.command(false),
                    },
                    sp(),
                ),
            },
        }
    }

    fn if_stmt(&mut self, depth: usize) -> Stmt {
        let arm_count = self.rng.gen_range(1..=3);
        let arms = (0..arm_count)
            .map(|_| (self.condition(), self.block(depth - 1, false)))
            .collect();
        let else_block =
            if self.rng.gen_bool(0.5) { Some(self.block(depth - 1, false)) } else { None };
        Stmt::new(StmtKind::If { arms, else_block }, sp())
    }

    fn case_stmt(&mut self, depth: usize) -> Stmt {
        let arm_count = self.rng.gen_range(1..=3);
        let mut used = 0u32;
        let mut arms = Vec::with_capacity(arm_count);
        for _ in 0..arm_count {
            let pat_count = self.rng.gen_range(1..=2);
            let patterns: Vec<String> = (0..pat_count)
                .map(|_| {
                    used += 1;
                    format!("p{used}")
                })
                .collect();
            let body =
                if self.rng.gen_bool(0.25) { Vec::new() } else { self.block(depth - 1, false) };
            // Bourne arms always break; a C arm with an empty body must
            // break too, or its labels would merge with the next arm's on
            // re-parse.
            let explicit_break = self.family == DialectFamily::Bourne
                || body.is_empty()
                || self.rng.gen_bool(0.6);
            arms.push(CaseArm { patterns, body, explicit_break });
        }
        let default_block =
            if self.rng.gen_bool(0.6) { Some(self.block(depth - 1, false)) } else { None };
        Stmt::new(
            StmtKind::CaseSwitch { subject: self.word(), arms, default_block },
            sp(),
        )
    }

    fn while_stmt(&mut self, depth: usize) -> Stmt {
        let negated = self.family == DialectFamily::Bourne && self.rng.gen_bool(0.3);
        let cond = self.condition();
        let body = self.block(depth - 1, true);
        Stmt::new(StmtKind::WhileLoop { cond, body, negated }, sp())
    }

    fn condition(&mut self) -> Condition {
        // Command-status conditions exist only in Bourne syntax; `test` as
        // the command word would re-parse as a comparison, so the pool
        // avoids it.
        if self.family == DialectFamily::Bourne && self.rng.gen_bool(0.25) {
            let cmd = self.command(false);
            let stmt = if self.rng.gen_bool(0.3) {
                Stmt::new(StmtKind::Pipeline(vec![cmd, self.command(false)]), sp())
            } else {
                Stmt::new(StmtKind::Simple(cmd), sp())
            };
            return Condition::PipelineStatus(Box::new(stmt));
        }
        let op = *[
            CompareOp::Gt,
            CompareOp::Lt,
            CompareOp::Ge,
            CompareOp::Le,
            CompareOp::Eq,
            CompareOp::Ne,
            CompareOp::StrEq,
            CompareOp::StrNe,
        ]
        .choose(&mut self.rng)
        .unwrap();
        // The C-family parser reads the comparison's numeric/textual mode
        // from its operand shapes, so the tree must match what its own
        // rendering re-parses to.
        let (op, lhs, rhs) = if self.family == DialectFamily::CFamily {
            match op {
                CompareOp::Eq | CompareOp::Ne | CompareOp::StrEq | CompareOp::StrNe => {
                    let numeric = matches!(op, CompareOp::Eq | CompareOp::Ne);
                    if numeric {
                        (op, var_word(&self.ident()), lit_word(&self.int_text()))
                    } else {
                        (op, var_word(&self.ident()), lit_word("teks"))
                    }
                }
                _ => (op, var_word(&self.ident()), lit_word(&self.int_text())),
            }
        } else {
            (op, self.word(), self.word())
        };
        let cmp = Condition::Compare { op, lhs, rhs };
        if self.rng.gen_bool(0.2) {
            Condition::Not(Box::new(cmp))
        } else {
            cmp
        }
    }

    fn int_text(&mut self) -> String {
        self.rng.gen_range(0..=99).to_string()
    }

    fn arith(&mut self, depth: usize) -> ArithExpr {
        if depth > 0 && self.rng.gen_bool(0.5) {
            let op = *[ArithBinOp::Add, ArithBinOp::Sub, ArithBinOp::Mul, ArithBinOp::Div]
                .choose(&mut self.rng)
                .unwrap();
            ArithExpr::Binary {
                op,
                lhs: Box::new(self.arith(depth - 1)),
                rhs: Box::new(self.arith(depth - 1)),
            }
        } else if self.rng.gen_bool(0.5) {
            ArithExpr::Var(self.ident())
        } else {
            ArithExpr::Literal(self.rng.gen_range(0..=99))
        }
    }

    fn command(&mut self, allow_redirect: bool) -> SimpleCommand {
        let head = *["echo", "grep", "ls", "clear"].choose(&mut self.rng).unwrap();
        let mut argv = vec![lit_word(head)];
        let n = match head {
            "clear" => 0,
            "grep" => 1,
            _ => self.rng.gen_range(0..=3),
        };
        for _ in 0..n {
            argv.push(self.word());
        }
        let mut cmd = SimpleCommand::new(argv);
        if allow_redirect && self.rng.gen_bool(0.2) {
            cmd.redirects.push(Redirect { target: "/dev/null".to_string() });
        }
        cmd
    }

    fn words(&mut self, min: usize, max: usize) -> Vec<Word> {
        let n = self.rng.gen_range(min..=max);
        (0..n).map(|_| self.word()).collect()
    }

    fn word(&mut self) -> Word {
        match self.rng.gen_range(0..12) {
            0 | 1 => lit_word(&format!("kata{}", self.rng.gen_range(0..99))),
            2 => lit_word(&self.int_text()),
            3 => lit_word("dua kata"),
            4 => lit_word("tab\\tdan\\ngaris"),
            5 => lit_word("$harga literal"),
            6 => var_word(&self.ident()),
            7 => word_from(vec![
                Segment::Literal("awalan-".to_string()),
                Segment::VarRef(self.ident()),
            ]),
            8 => word_from(vec![
                Segment::VarRef(self.ident()),
                Segment::Literal(".txt".to_string()),
            ]),
            9 => {
                let argv = vec![lit_word("expr"), var_word(&self.ident()), lit_word("+"), lit_word("1")];
                word_from(vec![Segment::CmdSub(SimpleCommand::new(argv))])
            }
            10 if self.family == DialectFamily::CFamily => match self.rng.gen_range(0..3) {
                0 => word_from(vec![Segment::ArrayRef(self.ident(), self.rng.gen_range(1..=6))]),
                1 => word_from(vec![Segment::LenRef(self.ident())]),
                _ => word_from(vec![Segment::StdinRead]),
            },
            _ => lit_word(&format!("isi{}", self.rng.gen_range(0..99))),
        }
    }
}

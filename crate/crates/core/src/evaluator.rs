//! Reference interpreter for the supported subset.
//!
//! Execution is fully deterministic: stdin is a fixed list of lines, the two
//! stubbed external commands (`ls`, `clear`) never produce output, and every
//! run yields an [`ExecutionTrace`] capturing stdout, stderr, the exit
//! status, recorded external calls, the final variable store, and any
//! harness diagnostics.

use std::collections::{BTreeMap, VecDeque};

use crate::ast::*;
use crate::diag::{codes, Diagnostic};
use crate::dialect::DialectFamily;
use crate::env::{Env, Value};
use crate::span::Span;
use crate::trace::ExecutionTrace;

/// Default budget of statement executions before the run is cut off.
pub const DEFAULT_STEP_LIMIT: u64 = 100_000;

#[derive(Debug, Clone)]
pub struct ExecutionConfig {
    pub family: DialectFamily,
    /// Lines answered to `read` / `$<`, without trailing newlines.
    pub stdin_lines: Vec<String>,
    pub initial_env: Env,
    /// Pre-seeded alias table (scripts normally define their own).
    pub aliases: BTreeMap<String, Vec<Word>>,
    pub step_limit: u64,
}

impl ExecutionConfig {
    pub fn new(family: DialectFamily) -> Self {
        ExecutionConfig {
            family,
            stdin_lines: Vec::new(),
            initial_env: Env::new(),
            aliases: BTreeMap::new(),
            step_limit: DEFAULT_STEP_LIMIT,
        }
    }

    pub fn with_stdin(mut self, text: &str) -> Self {
        self.stdin_lines = split_input_lines(text);
        self
    }
}

/// Split raw stdin text into lines the way the interpreter consumes them:
/// one entry per line, no trailing newline, and no phantom empty line after
/// a final newline.
pub fn split_input_lines(text: &str) -> Vec<String> {
    if text.is_empty() {
        return Vec::new();
    }
    let mut lines: Vec<String> = text.split('\n').map(str::to_string).collect();
    if text.ends_with('\n') {
        lines.pop();
    }
    lines
}

/// Run a script and collect its trace.
pub fn execute(ast: &ScriptAst, config: ExecutionConfig) -> ExecutionTrace {
    let mut m = Machine {
        family: config.family,
        env: config.initial_env,
        aliases: config.aliases,
        stdin: VecDeque::from(config.stdin_lines),
        stdout: Vec::new(),
        stderr: Vec::new(),
        external_calls: Vec::new(),
        diagnostics: Vec::new(),
        steps: 0,
        step_limit: config.step_limit,
        last_status: 0,
    };
    let exit_status = match m.exec_block(&ast.statements) {
        Ok(status) => status,
        Err(Interrupt::Break) => m.last_status,
        Err(Interrupt::Abort(status)) => status,
    };
    ExecutionTrace {
        stdout: m.stdout,
        stderr: m.stderr,
        exit_status,
        external_calls: m.external_calls,
        final_env: m.env,
        diagnostics: m.diagnostics,
    }
}

/// Decode the escape sequences the C-family `echo` understands. Applied
/// once, to the joined argument text, after expansion.
pub fn decode_echo_escapes(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut chars = text.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('n') => out.push('\n'),
            Some('t') => out.push('\t'),
            Some('\\') => out.push('\\'),
            Some(other) => {
                out.push('\\');
                out.push(other);
            }
            None => out.push('\\'),
        }
    }
    out
}

/// Non-local exits during execution.
enum Interrupt {
    /// `break` unwinding to the nearest loop.
    Break,
    /// The script is over (runtime error or harness stop); the value is the
    /// exit status.
    Abort(i32),
}

type Exec<T> = Result<T, Interrupt>;

struct Machine {
    family: DialectFamily,
    env: Env,
    aliases: BTreeMap<String, Vec<Word>>,
    stdin: VecDeque<String>,
    stdout: Vec<u8>,
    stderr: Vec<u8>,
    external_calls: Vec<Vec<String>>,
    diagnostics: Vec<Diagnostic>,
    steps: u64,
    step_limit: u64,
    last_status: i32,
}

impl Machine {
    // -- plumbing -----------------------------------------------------------

    fn err_line(&mut self, text: &str) {
        self.stderr.extend_from_slice(text.as_bytes());
        self.stderr.push(b'\n');
    }

    fn abort_with(&mut self, code: &'static str, message: String, status: i32) -> Interrupt {
        self.err_line(&message);
        self.diagnostics.push(Diagnostic::error(code, message, Span::zero()));
        Interrupt::Abort(status)
    }

    fn undefined_variable(&mut self, name: &str) -> Interrupt {
        self.abort_with(
            codes::UNDEFINED_VARIABLE,
            format!("{name}: Undefined variable."),
            1,
        )
    }

    fn not_a_number(&mut self, text: &str) -> Interrupt {
        self.abort_with(codes::NOT_A_NUMBER, format!("not a number: `{text}`"), 2)
    }

    /// Charge one unit of the execution budget.
    fn charge_step(&mut self) -> Exec<()> {
        self.steps += 1;
        if self.steps > self.step_limit {
            self.diagnostics.push(Diagnostic::error(
                codes::STEP_LIMIT_EXCEEDED,
                format!("execution stopped after {} steps", self.step_limit),
                Span::zero(),
            ));
            return Err(Interrupt::Abort(1));
        }
        Ok(())
    }

    fn read_stdin_line(&mut self) -> Exec<String> {
        match self.stdin.pop_front() {
            Some(line) => Ok(line),
            None => {
                self.diagnostics.push(Diagnostic::error(
                    codes::STDIN_EXHAUSTED,
                    "the script read past the end of the provided input",
                    Span::zero(),
                ));
                Err(Interrupt::Abort(1))
            }
        }
    }

    fn parse_int(&mut self, text: &str) -> Exec<i64> {
        let trimmed = text.trim();
        trimmed
            .parse::<i64>()
            .map_err(|_| self.not_a_number(trimmed))
    }

    // -- expansion ----------------------------------------------------------

    /// Expand a word to text, or `None` when the word disappears from an
    /// argument list (an unquoted word of pure expansions that came out
    /// empty).
    fn expand_word_opt(&mut self, word: &Word) -> Exec<Option<String>> {
        let mut text = String::new();
        let mut has_literal = false;
        for seg in &word.segments {
            match seg {
                Segment::Literal(s) => {
                    has_literal = true;
                    text.push_str(s);
                }
                Segment::VarRef(name) => text.push_str(&self.var_text(name)?),
                Segment::ArrayRef(name, index) => text.push_str(&self.element_text(name, *index)?),
                Segment::LenRef(name) => {
                    let len = match &self.binding_value(name)? {
                        Value::List(items) => items.len(),
                        Value::Scalar(_) => 1,
                    };
                    text.push_str(&len.to_string());
                }
                Segment::CmdSub(cmd) => {
                    let (_, out) = self.exec_simple(cmd, None)?;
                    let captured = String::from_utf8_lossy(&out);
                    text.push_str(captured.trim_end_matches('\n'));
                }
                Segment::StdinRead => {
                    let line = self.read_stdin_line()?;
                    text.push_str(&line);
                }
            }
        }
        let drops = text.is_empty()
            && !has_literal
            && !word.segments.is_empty()
            && word.quoting == Quoting::Unquoted;
        Ok(if drops { None } else { Some(text) })
    }

    /// Expand a word where a value is needed even if empty (assignments,
    /// subjects, condition operands).
    fn expand_word_text(&mut self, word: &Word) -> Exec<String> {
        Ok(self.expand_word_opt(word)?.unwrap_or_default())
    }

    fn expand_words(&mut self, words: &[Word]) -> Exec<Vec<String>> {
        let mut out = Vec::with_capacity(words.len());
        for w in words {
            if let Some(text) = self.expand_word_opt(w)? {
                out.push(text);
            }
        }
        Ok(out)
    }

    fn var_text(&mut self, name: &str) -> Exec<String> {
        Ok(self.binding_value(name)?.to_text())
    }

    fn binding_value(&mut self, name: &str) -> Exec<Value> {
        match self.env.lookup(name) {
            Some(binding) => Ok(binding.value.clone()),
            None => match self.family {
                DialectFamily::Bourne => Ok(Value::Scalar(String::new())),
                DialectFamily::CFamily => Err(self.undefined_variable(name)),
            },
        }
    }

    fn element_text(&mut self, name: &str, index: usize) -> Exec<String> {
        let value = self.binding_value(name)?;
        let found = match &value {
            Value::List(items) => items.get(index - 1).cloned(),
            Value::Scalar(s) if index == 1 => Some(s.clone()),
            Value::Scalar(_) => None,
        };
        found.ok_or_else(|| {
            self.abort_with(
                codes::SUBSCRIPT_OUT_OF_RANGE,
                "Subscript out of range.".to_string(),
                1,
            )
        })
    }

    // -- statements ---------------------------------------------------------

    fn exec_block(&mut self, block: &[Stmt]) -> Exec<i32> {
        for stmt in block {
            self.exec_stmt(stmt)?;
        }
        Ok(self.last_status)
    }

    fn exec_stmt(&mut self, stmt: &Stmt) -> Exec<i32> {
        if let StmtKind::Comment(_) = stmt.kind {
            return Ok(self.last_status);
        }
        self.charge_step()?;
        let status = match &stmt.kind {
            StmtKind::Comment(_) => unreachable!("handled above"),
            StmtKind::Assign { name, value } => self.exec_assign(name, value)?,
            StmtKind::ReadInto { name } => {
                let line = self.read_stdin_line()?;
                self.set_reporting(name, Value::Scalar(line))
            }
            StmtKind::Export { names } => {
                for n in names {
                    self.env.mark_export(n);
                }
                0
            }
            StmtKind::Readonly { names } => {
                for n in names {
                    self.env.mark_readonly(n);
                }
                0
            }
            StmtKind::AliasDef { name, replacement } => {
                self.aliases.insert(name.clone(), replacement.clone());
                0
            }
            StmtKind::Simple(cmd) => {
                let (status, out) = self.exec_simple(cmd, None)?;
                self.stdout.extend_from_slice(&out);
                status
            }
            StmtKind::Pipeline(stages) => self.exec_pipeline(stages)?,
            StmtKind::If { arms, else_block } => {
                let mut status = 0;
                let mut matched = false;
                for (cond, body) in arms {
                    if self.eval_condition(cond)? {
                        status = self.exec_block(body)?;
                        matched = true;
                        break;
                    }
                }
                if !matched {
                    if let Some(body) = else_block {
                        status = self.exec_block(body)?;
                    }
                }
                status
            }
            StmtKind::CaseSwitch { subject, arms, default_block } => {
                self.exec_case(subject, arms, default_block.as_deref())?
            }
            StmtKind::ForEach { var, items, body } => {
                let items = self.expand_words(items)?;
                let mut status = 0;
                for item in items {
                    let set = self.set_reporting(var, Value::Scalar(item));
                    if set != 0 {
                        status = set;
                        break;
                    }
                    match self.exec_block(body) {
                        Ok(st) => status = st,
                        Err(Interrupt::Break) => break,
                        Err(abort) => return Err(abort),
                    }
                }
                status
            }
            StmtKind::WhileLoop { cond, body, negated } => {
                let mut status = 0;
                loop {
                    self.charge_step()?;
                    let truth = self.eval_condition(cond)?;
                    if truth == *negated {
                        break;
                    }
                    match self.exec_block(body) {
                        Ok(st) => status = st,
                        Err(Interrupt::Break) => break,
                        Err(abort) => return Err(abort),
                    }
                }
                status
            }
            StmtKind::RepeatLoop { count, command } => {
                let mut status = 0;
                for _ in 0..*count {
                    self.charge_step()?;
                    let (st, out) = self.exec_simple(command, None)?;
                    self.stdout.extend_from_slice(&out);
                    status = st;
                }
                status
            }
            StmtKind::SelectLoop { var, items, body } => self.exec_select(var, items, body)?,
            StmtKind::Break => return Err(Interrupt::Break),
        };
        self.last_status = status;
        Ok(status)
    }

    fn exec_assign(&mut self, name: &str, value: &AssignValue) -> Exec<i32> {
        let value = match value {
            AssignValue::Scalar(w) => Value::Scalar(self.expand_word_text(w)?),
            AssignValue::List(items) => Value::List(self.expand_words(items)?),
            AssignValue::Arith(expr) => {
                Value::Scalar(self.eval_arith(expr)?.to_string())
            }
            AssignValue::AugmentedAdd(expr) => {
                let current = self.binding_value(name)?.to_text();
                let current = self.parse_int(&current)?;
                let delta = self.eval_arith(expr)?;
                Value::Scalar(current.wrapping_add(delta).to_string())
            }
        };
        Ok(self.set_reporting(name, value))
    }

    /// Assign, turning a readonly violation into the shell-style stderr
    /// message and status 1 (execution continues).
    fn set_reporting(&mut self, name: &str, value: Value) -> i32 {
        match self.env.set(name, value) {
            Ok(()) => 0,
            Err(violation) => {
                self.err_line(&violation.message);
                1
            }
        }
    }

    fn exec_case(
        &mut self,
        subject: &Word,
        arms: &[CaseArm],
        default_block: Option<&[Stmt]>,
    ) -> Exec<i32> {
        let subject = self.expand_word_text(subject)?;
        let matched = arms
            .iter()
            .position(|arm| arm.patterns.iter().any(|p| *p == subject));
        let mut status = 0;
        match matched {
            Some(start) => {
                // Run from the matched arm; arms without an explicit break
                // fall through into the next arm and finally the default.
                for arm in &arms[start..] {
                    status = self.exec_block(&arm.body)?;
                    if arm.explicit_break {
                        return Ok(status);
                    }
                }
                if let Some(body) = default_block {
                    status = self.exec_block(body)?;
                }
            }
            None => {
                if let Some(body) = default_block {
                    status = self.exec_block(body)?;
                }
            }
        }
        Ok(status)
    }

    fn exec_select(&mut self, var: &str, items: &[Word], body: &[Stmt]) -> Exec<i32> {
        let items = self.expand_words(items)?;
        let menu: String = items
            .iter()
            .enumerate()
            .map(|(i, item)| format!("{}) {item}\n", i + 1))
            .collect();
        self.stdout.extend_from_slice(menu.as_bytes());
        let mut status = 0;
        loop {
            self.charge_step()?;
            self.stdout.extend_from_slice(b"#? ");
            let reply = self.read_stdin_line()?;
            if reply.is_empty() {
                self.stdout.extend_from_slice(menu.as_bytes());
                continue;
            }
            let chosen = reply
                .trim()
                .parse::<usize>()
                .ok()
                .and_then(|k| (1..=items.len()).contains(&k).then(|| items[k - 1].clone()))
                .unwrap_or_default();
            let st = self.set_reporting("REPLY", Value::Scalar(reply));
            if st != 0 {
                status = st;
                continue;
            }
            let st = self.set_reporting(var, Value::Scalar(chosen));
            if st != 0 {
                status = st;
                continue;
            }
            match self.exec_block(body) {
                Ok(st) => status = st,
                Err(Interrupt::Break) => break,
                Err(abort) => return Err(abort),
            }
        }
        Ok(status)
    }

    // -- commands -----------------------------------------------------------

    fn exec_pipeline(&mut self, stages: &[SimpleCommand]) -> Exec<i32> {
        let mut input: Option<Vec<String>> = None;
        let mut status = 0;
        for (i, stage) in stages.iter().enumerate() {
            let (st, out) = self.exec_simple(stage, input.as_deref())?;
            status = st;
            if i + 1 < stages.len() {
                input = Some(split_input_lines(&String::from_utf8_lossy(&out)));
            } else {
                self.stdout.extend_from_slice(&out);
            }
        }
        Ok(status)
    }

    /// Run one simple command. Returns its status and the stdout bytes it
    /// produced (already discarded when the command had a `>` redirect).
    fn exec_simple(
        &mut self,
        cmd: &SimpleCommand,
        input: Option<&[String]>,
    ) -> Exec<(i32, Vec<u8>)> {
        let mut argv = self.expand_words(&cmd.argv)?;
        if argv.is_empty() {
            return Ok((0, Vec::new()));
        }
        // One level of alias substitution on the command word.
        if self.family == DialectFamily::CFamily {
            if let Some(replacement) = self.aliases.get(argv[0].as_str()).cloned() {
                let mut expanded = self.expand_words(&replacement)?;
                expanded.extend(argv.drain(1..));
                argv = expanded;
                if argv.is_empty() {
                    return Ok((0, Vec::new()));
                }
            }
        }
        let mut out = Vec::new();
        let status = match argv[0].as_str() {
            "echo" => self.builtin_echo(&argv[1..], &mut out),
            "expr" => self.builtin_expr(&argv[1..], &mut out),
            "grep" => self.builtin_grep(&argv[1..], input.unwrap_or(&[]), &mut out),
            "unset" => self.builtin_unset(&argv[1..]),
            "ls" | "clear" => {
                self.external_calls.push(argv.clone());
                0
            }
            name => {
                match self.family {
                    DialectFamily::Bourne => {
                        self.err_line(&format!("{name}: command not found"));
                        127
                    }
                    DialectFamily::CFamily => {
                        self.err_line(&format!("{name}: Command not found."));
                        1
                    }
                }
            }
        };
        if !cmd.redirects.is_empty() {
            out.clear();
        }
        Ok((status, out))
    }

    fn builtin_echo(&mut self, args: &[String], out: &mut Vec<u8>) -> i32 {
        let (newline, args) = match args.first().map(String::as_str) {
            Some("-n") => (false, &args[1..]),
            _ => (true, args),
        };
        let mut text = args.join(" ");
        if self.family == DialectFamily::CFamily {
            text = decode_echo_escapes(&text);
        }
        out.extend_from_slice(text.as_bytes());
        if newline {
            out.push(b'\n');
        }
        0
    }

    /// `expr a OP b` with exactly one operation. Follows the classic tool:
    /// status 0 for a non-zero result, 1 for zero, 2 for errors (which are
    /// command-level: execution continues).
    fn builtin_expr(&mut self, args: &[String], out: &mut Vec<u8>) -> i32 {
        if args.len() != 3 {
            self.err_line("expr: syntax error");
            return 2;
        }
        let (a, b) = match (args[0].trim().parse::<i64>(), args[2].trim().parse::<i64>()) {
            (Ok(a), Ok(b)) => (a, b),
            _ => {
                self.err_line("expr: non-integer argument");
                return 2;
            }
        };
        let result = match args[1].as_str() {
            "+" => a.wrapping_add(b),
            "-" => a.wrapping_sub(b),
            "*" => a.wrapping_mul(b),
            "/" => {
                if b == 0 {
                    self.err_line("expr: division by zero");
                    return 2;
                }
                a.wrapping_div(b)
            }
            _ => {
                self.err_line("expr: syntax error");
                return 2;
            }
        };
        out.extend_from_slice(result.to_string().as_bytes());
        out.push(b'\n');
        i32::from(result == 0)
    }

    fn builtin_grep(&mut self, args: &[String], input: &[String], out: &mut Vec<u8>) -> i32 {
        let (invert, pattern) = match args {
            [p] => (false, p.as_str()),
            [v, p] if v == "-v" => (true, p.as_str()),
            _ => {
                self.err_line("grep: usage: grep [-v] pattern");
                return 2;
            }
        };
        let matcher = GrepPattern::parse(pattern);
        let mut selected = 0;
        for line in input {
            if matcher.matches(line) != invert {
                selected += 1;
                out.extend_from_slice(line.as_bytes());
                out.push(b'\n');
            }
        }
        i32::from(selected == 0)
    }

    fn builtin_unset(&mut self, names: &[String]) -> i32 {
        let mut status = 0;
        for name in names {
            if let Err(violation) = self.env.unset(name) {
                self.err_line(&violation.message);
                status = 1;
            }
        }
        status
    }

    // -- conditions and arithmetic -------------------------------------------

    fn eval_condition(&mut self, cond: &Condition) -> Exec<bool> {
        match cond {
            Condition::Compare { op, lhs, rhs } => {
                let l = self.expand_word_text(lhs)?;
                let r = self.expand_word_text(rhs)?;
                if op.is_numeric() {
                    let a = self.parse_int(&l)?;
                    let b = self.parse_int(&r)?;
                    Ok(match op {
                        CompareOp::Gt => a > b,
                        CompareOp::Lt => a < b,
                        CompareOp::Ge => a >= b,
                        CompareOp::Le => a <= b,
                        CompareOp::Eq => a == b,
                        CompareOp::Ne => a != b,
                        CompareOp::StrEq | CompareOp::StrNe => unreachable!("string ops"),
                    })
                } else {
                    Ok(match op {
                        CompareOp::StrEq => l == r,
                        CompareOp::StrNe => l != r,
                        _ => unreachable!("numeric ops"),
                    })
                }
            }
            Condition::Not(inner) => Ok(!self.eval_condition(inner)?),
            Condition::PipelineStatus(stmt) => {
                let status = match &stmt.kind {
                    StmtKind::Simple(cmd) => {
                        let (st, out) = self.exec_simple(cmd, None)?;
                        self.stdout.extend_from_slice(&out);
                        st
                    }
                    StmtKind::Pipeline(stages) => self.exec_pipeline(stages)?,
                    _ => self.exec_stmt(stmt)?,
                };
                Ok(status == 0)
            }
        }
    }

    fn eval_arith(&mut self, expr: &ArithExpr) -> Exec<i64> {
        match expr {
            ArithExpr::Literal(n) => Ok(*n),
            ArithExpr::Var(name) => {
                let text = self.binding_value(name)?.to_text();
                self.parse_int(&text)
            }
            ArithExpr::Binary { op, lhs, rhs } => {
                let a = self.eval_arith(lhs)?;
                let b = self.eval_arith(rhs)?;
                Ok(match op {
                    ArithBinOp::Add => a.wrapping_add(b),
                    ArithBinOp::Sub => a.wrapping_sub(b),
                    ArithBinOp::Mul => a.wrapping_mul(b),
                    ArithBinOp::Div => {
                        if b == 0 {
                            return Err(self.abort_with(
                                codes::DIVISION_BY_ZERO,
                                "division by zero".to_string(),
                                2,
                            ));
                        }
                        a.wrapping_div(b)
                    }
                })
            }
        }
    }
}

/// The two pattern forms the `grep` builtin understands: a single bracket
/// expression (possibly negated, with ranges) or a fixed substring.
enum GrepPattern {
    Bracket { negate: bool, ranges: Vec<(char, char)> },
    Substring(String),
}

impl GrepPattern {
    fn parse(pattern: &str) -> Self {
        let inner = pattern
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
            .filter(|inner| !inner.is_empty());
        let Some(inner) = inner else {
            return GrepPattern::Substring(pattern.to_string());
        };
        let (negate, body) = match inner.strip_prefix('^') {
            Some(rest) if !rest.is_empty() => (true, rest),
            _ => (false, inner),
        };
        let chars: Vec<char> = body.chars().collect();
        let mut ranges = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            if i + 2 < chars.len() && chars[i + 1] == '-' {
                ranges.push((chars[i], chars[i + 2]));
                i += 3;
            } else {
                ranges.push((chars[i], chars[i]));
                i += 1;
            }
        }
        GrepPattern::Bracket { negate, ranges }
    }

    fn matches(&self, line: &str) -> bool {
        match self {
            GrepPattern::Substring(s) => line.contains(s.as_str()),
            GrepPattern::Bracket { negate, ranges } => line
                .chars()
                .any(|c| ranges.iter().any(|&(lo, hi)| lo <= c && c <= hi) != *negate),
        }
    }
}

//! Command-line entry point: detect, parse, translate, run, diff, and lint
//! shell scripts in the shared two-family subset.
//!
//! Exit codes are uniform across subcommands:
//!
//! | code | meaning                                               |
//! |------|-------------------------------------------------------|
//! | 0    | success: clean parse, definite family, match, no findings |
//! | 1    | findings, mismatch, or an ambiguous dialect           |
//! | 2    | unreadable input or parse failure                     |
//! | 3    | runtime error (stdin exhausted, step limit exceeded)  |
//! | 4    | translation refused an unsupported construct          |
//!
//! `run` itself exits with the script's own status (clamped to 0–125) so the
//! tool composes with ordinary shell pipelines.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use twosh::detector::detect;
use twosh::diag::{codes, Diagnostic, Severity};
use twosh::dialect::{family_by_name, DialectFamily};
use twosh::evaluator::{execute, ExecutionConfig};
use twosh::lint::lint;
use twosh::parser::parse_script;
use twosh::renderer::render_script;
use twosh::trace::ExecutionTrace;
use twosh::translator::{translate_script, TranslateOptions, TranslationReport};

#[derive(Parser)]
#[command(
    name = "twosh",
    version,
    about = "A dual-dialect shell script toolkit: detect, parse, translate, run, diff, lint"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Guess which shell family a script belongs to
    Detect {
        /// Script path, or `-` for standard input
        path: String,
        /// Emit the full verdict as JSON
        #[arg(long)]
        json: bool,
    },
    /// Parse a script and report diagnostics
    Parse {
        /// Script path, or `-` for standard input
        path: String,
        /// Shell or family name (default: auto-detect)
        #[arg(long)]
        dialect: Option<String>,
        /// Dump the parsed tree
        #[arg(long)]
        ast: bool,
        /// Emit a JSON parse report
        #[arg(long)]
        json: bool,
    },
    /// Translate a script into the other family
    Translate {
        /// Script path, or `-` for standard input
        path: String,
        /// Source shell or family name
        #[arg(long)]
        from: String,
        /// Target shell or family name
        #[arg(long)]
        to: String,
        /// Drop unsupported constructs with a warning instead of refusing
        #[arg(long)]
        lenient: bool,
        /// Repeat the undefined-variable caveat on every affected statement
        #[arg(long)]
        pedantic: bool,
        /// Emit the full translation report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Execute a script deterministically against a scripted stdin
    Run {
        /// Script path, or `-` for standard input
        path: String,
        /// Shell or family name (default: auto-detect)
        #[arg(long)]
        dialect: Option<String>,
        /// File whose lines feed `read` / `$<`
        #[arg(long)]
        stdin: Option<PathBuf>,
        /// Emit the execution trace as JSON instead of streaming output
        #[arg(long)]
        json: bool,
    },
    /// Run a script and its translation; compare stdout bytes and exit status
    Diff {
        /// Script path, or `-` for standard input
        path: String,
        /// Source shell or family name
        #[arg(long)]
        from: String,
        /// Target shell or family name
        #[arg(long)]
        to: String,
        /// File whose lines feed `read` / `$<` in both runs
        #[arg(long)]
        stdin: Option<PathBuf>,
        /// Emit the comparison as JSON
        #[arg(long)]
        json: bool,
    },
    /// Report dialect markers that belong to the other family
    Lint {
        /// Script path, or `-` for standard input
        path: String,
        /// Family to lint as (default: auto-detect)
        #[arg(long)]
        dialect: Option<String>,
        /// Emit the lint report as JSON
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Detect { path, json } => cmd_detect(&path, json),
        Cmd::Parse { path, dialect, ast, json } => cmd_parse(&path, dialect.as_deref(), ast, json),
        Cmd::Translate { path, from, to, lenient, pedantic, json } => {
            cmd_translate(&path, &from, &to, lenient, pedantic, json)
        }
        Cmd::Run { path, dialect, stdin, json } => {
            cmd_run(&path, dialect.as_deref(), stdin.as_deref(), json)
        }
        Cmd::Diff { path, from, to, stdin, json } => {
            cmd_diff(&path, &from, &to, stdin.as_deref(), json)
        }
        Cmd::Lint { path, dialect, json } => cmd_lint(&path, dialect.as_deref(), json),
    };
    ExitCode::from(code)
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

/// Read the script text, treating `-` as standard input.
fn read_input(path: &str) -> Result<String, u8> {
    let result = if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map(|_| text)
    } else {
        std::fs::read_to_string(path)
    };
    result.map_err(|e| {
        eprintln!("twosh: cannot read {path}: {e}");
        2
    })
}

fn parse_family(name: &str) -> Result<DialectFamily, u8> {
    family_by_name(name).ok_or_else(|| {
        eprintln!(
            "twosh: unknown dialect `{name}` (expected a shell name like sh, bash, ksh, zsh, \
             csh, tcsh, or a family name: bourne, cfamily)"
        );
        2
    })
}

/// Resolve the family to operate under: an explicit flag wins; otherwise the
/// detector must reach a definite verdict.
fn resolve_family(source: &str, flag: Option<&str>) -> Result<DialectFamily, u8> {
    match flag {
        Some(name) => parse_family(name),
        None => match detect(source).family {
            Some(family) => Ok(family),
            None => {
                eprintln!(
                    "twosh: cannot tell which family this script belongs to; pass --dialect"
                );
                Err(1)
            }
        },
    }
}

fn report_diagnostic(diag: &Diagnostic) {
    eprintln!(
        "twosh: {}:{}: {} [{}]",
        diag.span.line, diag.span.column, diag.message, diag.code
    );
}

/// Write to stdout, ignoring a closed pipe (`twosh ... | head` must not
/// panic mid-stream).
fn out(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn print_json(value: &serde_json::Value) {
    let pretty = serde_json::to_string_pretty(value).expect("serializable");
    out(&pretty);
    out("\n");
}

/// Runtime errors that make the *tool* (not the script) report failure.
fn tool_level_runtime_error(trace: &ExecutionTrace) -> bool {
    trace
        .diagnostics
        .iter()
        .any(|d| d.code == codes::STDIN_EXHAUSTED || d.code == codes::STEP_LIMIT_EXCEEDED)
}

fn clamp_status(status: i32) -> u8 {
    status.clamp(0, 125) as u8
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_detect(path: &str, json: bool) -> u8 {
    let source = match read_input(path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let verdict = detect(&source);
    if json {
        print_json(&serde_json::to_value(&verdict).expect("serializable"));
    } else {
        out(&format!("{} {:.2}\n", verdict.label(), verdict.confidence));
    }
    if verdict.family.is_some() {
        0
    } else {
        1
    }
}

fn cmd_parse(path: &str, dialect: Option<&str>, ast: bool, json: bool) -> u8 {
    let source = match read_input(path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let family = match resolve_family(&source, dialect) {
        Ok(f) => f,
        Err(code) => return code,
    };
    match parse_script(&source, family) {
        Ok(tree) => {
            if json {
                let mut value = json!({
                    "family": family,
                    "ok": true,
                    "statement_count": tree.statements.len(),
                    "diagnostics": [],
                });
                if ast {
                    value["ast"] = json!(format!("{:#?}", tree.statements));
                }
                print_json(&value);
            } else if ast {
                out(&format!("{:#?}\n", tree.statements));
            }
            0
        }
        Err(diag) => {
            if json {
                print_json(&json!({
                    "family": family,
                    "ok": false,
                    "statement_count": 0,
                    "diagnostics": [diag],
                }));
            } else {
                report_diagnostic(&diag);
            }
            2
        }
    }
}

/// Translate and render, or explain why not. Shared by `translate` and `diff`.
fn translate_to_text(
    source: &str,
    from: DialectFamily,
    to: DialectFamily,
    options: TranslateOptions,
) -> Result<(TranslationReport, String), u8> {
    let tree = match parse_script(source, from) {
        Ok(t) => t,
        Err(diag) => {
            report_diagnostic(&diag);
            return Err(2);
        }
    };
    let report = translate_script(&tree, from, to, options);
    if report.unsupported.iter().any(|d| d.severity == Severity::Error) {
        for diag in &report.unsupported {
            report_diagnostic(diag);
        }
        return Err(4);
    }
    match render_script(&report.output_ast, to) {
        Ok(text) => Ok((report, text)),
        Err(diag) => {
            report_diagnostic(&diag);
            Err(4)
        }
    }
}

fn cmd_translate(
    path: &str,
    from: &str,
    to: &str,
    lenient: bool,
    pedantic: bool,
    json: bool,
) -> u8 {
    let source = match read_input(path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let (from, to) = match (parse_family(from), parse_family(to)) {
        (Ok(f), Ok(t)) => (f, t),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    if from == to {
        eprintln!("twosh: --from and --to name the same family; nothing to translate");
        return 2;
    }
    let options = TranslateOptions { lenient, pedantic };
    match translate_to_text(&source, from, to, options) {
        Ok((report, text)) => {
            if json {
                print_json(&translation_json(&report, from, to, &text));
            } else {
                out(&text);
                for note in &report.notes {
                    eprintln!(
                        "note[{}] {}:{}: {}",
                        note.rule_id, note.span.line, note.span.column, note.text
                    );
                }
                for diag in &report.unsupported {
                    report_diagnostic(diag);
                }
            }
            0
        }
        Err(code) => code,
    }
}

fn translation_json(
    report: &TranslationReport,
    from: DialectFamily,
    to: DialectFamily,
    text: &str,
) -> serde_json::Value {
    json!({
        "from": from,
        "to": to,
        "output": text,
        "rules_applied": report.rules_applied,
        "notes": report.notes,
        "unsupported": report.unsupported,
    })
}

fn read_stdin_file(path: Option<&std::path::Path>) -> Result<String, u8> {
    match path {
        None => Ok(String::new()),
        Some(p) => std::fs::read_to_string(p).map_err(|e| {
            eprintln!("twosh: cannot read {}: {e}", p.display());
            2
        }),
    }
}

fn cmd_run(path: &str, dialect: Option<&str>, stdin: Option<&std::path::Path>, json: bool) -> u8 {
    let source = match read_input(path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let family = match resolve_family(&source, dialect) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let stdin_text = match read_stdin_file(stdin) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let tree = match parse_script(&source, family) {
        Ok(t) => t,
        Err(diag) => {
            report_diagnostic(&diag);
            return 2;
        }
    };
    let trace = execute(&tree, ExecutionConfig::new(family).with_stdin(&stdin_text));
    if json {
        print_json(&serde_json::to_value(&trace).expect("serializable"));
    } else {
        let _ = std::io::stdout().write_all(&trace.stdout);
        let _ = std::io::stderr().write_all(&trace.stderr);
    }
    if tool_level_runtime_error(&trace) {
        3
    } else {
        clamp_status(trace.exit_status)
    }
}

fn cmd_diff(
    path: &str,
    from: &str,
    to: &str,
    stdin: Option<&std::path::Path>,
    json: bool,
) -> u8 {
    let source = match read_input(path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let (from, to) = match (parse_family(from), parse_family(to)) {
        (Ok(f), Ok(t)) => (f, t),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    if from == to {
        eprintln!("twosh: --from and --to name the same family; nothing to compare");
        return 2;
    }
    let stdin_text = match read_stdin_file(stdin) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let (_, translated) = match translate_to_text(&source, from, to, TranslateOptions::default()) {
        Ok(pair) => pair,
        Err(code) => return code,
    };
    // The source parsed once already inside translate_to_text; parse failures
    // cannot reach this point.
    let src_tree = parse_script(&source, from).expect("already parsed");
    let out_tree = match parse_script(&translated, to) {
        Ok(t) => t,
        Err(diag) => {
            report_diagnostic(&diag);
            return 4;
        }
    };
    let a = execute(&src_tree, ExecutionConfig::new(from).with_stdin(&stdin_text));
    let b = execute(&out_tree, ExecutionConfig::new(to).with_stdin(&stdin_text));
    if tool_level_runtime_error(&a) || tool_level_runtime_error(&b) {
        eprintln!("twosh: a run hit a runtime error (stdin exhausted or step limit)");
        return 3;
    }
    let matched = a.stdout == b.stdout && a.exit_status == b.exit_status;
    let left = a.stdout_str().into_owned();
    let right = b.stdout_str().into_owned();
    let diff_text = if matched {
        String::new()
    } else {
        similar::TextDiff::from_lines(&left, &right)
            .unified_diff()
            .header("original", "translated")
            .to_string()
    };
    if json {
        print_json(&json!({
            "matched": matched,
            "source_exit": a.exit_status,
            "translated_exit": b.exit_status,
            "stdout_diff": diff_text,
        }));
    } else if !matched {
        out(&diff_text);
        if a.exit_status != b.exit_status {
            out(&format!(
                "exit status: original {} != translated {}\n",
                a.exit_status, b.exit_status
            ));
        }
    }
    if matched {
        0
    } else {
        1
    }
}

fn cmd_lint(path: &str, dialect: Option<&str>, json: bool) -> u8 {
    let source = match read_input(path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let assume = match dialect {
        Some(name) => match parse_family(name) {
            Ok(f) => Some(f),
            Err(code) => return code,
        },
        None => None,
    };
    let report = lint(&source, assume);
    if json {
        print_json(&serde_json::to_value(&report).expect("serializable"));
    } else {
        for finding in &report.findings {
            let family = match finding.family {
                DialectFamily::Bourne => "Bourne",
                DialectFamily::CFamily => "C",
            };
            out(&format!(
                "{}:{}: `{}` belongs to the {family} family — {}\n",
                finding.line, finding.column, finding.marker, finding.hint
            ));
        }
    }
    if report.findings.is_empty() {
        0
    } else {
        1
    }
}

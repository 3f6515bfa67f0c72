//! Browser bindings for the twosh toolkit.
//!
//! Three operations are exposed to JavaScript, each returning a JSON string
//! so the page needs no generated types: [`detect`] (family verdict),
//! [`translate`] (cross-family translation with notes), and [`run`]
//! (deterministic execution trace against a scripted stdin).

use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

use twosh::detector;
use twosh::dialect::{family_by_name, DialectFamily};
use twosh::evaluator::{execute, ExecutionConfig};
use twosh::parser::parse_script;
use twosh::renderer::render_script;
use twosh::translator::{translate_script, TranslateOptions};

fn family_arg(name: &str) -> Result<DialectFamily, String> {
    family_by_name(name).ok_or_else(|| format!("unknown dialect `{name}`"))
}

fn error_json(message: impl std::fmt::Display) -> String {
    json!({ "ok": false, "error": message.to_string() }).to_string()
}

/// Guess which shell family `source` belongs to. Returns the full verdict:
/// `{family, confidence, bourne_votes, cfamily_votes, evidence: [...]}`.
#[wasm_bindgen]
pub fn detect(source: &str) -> String {
    let verdict = detector::detect(source);
    json!({ "ok": true, "verdict": verdict }).to_string()
}

/// Translate `source` from one family to the other. On success the object
/// carries the rendered target text plus the rule ledger; a refusal reports
/// each unsupported construct instead.
#[wasm_bindgen]
pub fn translate(source: &str, from: &str, to: &str, lenient: bool) -> String {
    let (from, to) = match (family_arg(from), family_arg(to)) {
        (Ok(f), Ok(t)) => (f, t),
        (Err(e), _) | (_, Err(e)) => return error_json(e),
    };
    if from == to {
        return error_json("source and target name the same family");
    }
    let tree = match parse_script(source, from) {
        Ok(t) => t,
        Err(diag) => return error_json(format!("parse error: {}", diag.message)),
    };
    let options = TranslateOptions { lenient, ..Default::default() };
    let report = translate_script(&tree, from, to, options);
    if !report.is_total() && !lenient {
        return json!({
            "ok": false,
            "error": "unsupported constructs",
            "unsupported": report.unsupported,
        })
        .to_string();
    }
    match render_script(&report.output_ast, to) {
        Ok(text) => json!({
            "ok": true,
            "output": text,
            "rules_applied": report.rules_applied,
            "notes": report.notes,
            "unsupported": report.unsupported,
        })
        .to_string(),
        Err(diag) => error_json(format!("render error: {}", diag.message)),
    }
}

/// Execute `source` under `dialect` with `stdin` pre-scripted; returns the
/// full execution trace (stdout, stderr, exit status, final environment,
/// diagnostics).
#[wasm_bindgen]
pub fn run(source: &str, dialect: &str, stdin: &str) -> String {
    let family = match family_arg(dialect) {
        Ok(f) => f,
        Err(e) => return error_json(e),
    };
    let tree = match parse_script(source, family) {
        Ok(t) => t,
        Err(diag) => return error_json(format!("parse error: {}", diag.message)),
    };
    let trace = execute(&tree, ExecutionConfig::new(family).with_stdin(stdin));
    json!({ "ok": true, "trace": trace }).to_string()
}

//! Every corpus fixture must execute to exactly its recorded trace.
//!
//! The recorded traces were written by hand from the documented semantics
//! before the interpreter existed, so they check the implementation rather
//! than echo it.

use std::fs;
use std::path::{Path, PathBuf};

use twosh::dialect::DialectFamily;
use twosh::evaluator::{execute, ExecutionConfig};
use twosh::parser::parse_script;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn fixture_dirs() -> Vec<PathBuf> {
    let mut dirs: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.is_dir())
        .collect();
    dirs.sort();
    dirs
}

fn load_script(dir: &Path) -> (String, DialectFamily) {
    let sh = dir.join("script.sh");
    let csh = dir.join("script.csh");
    if sh.exists() {
        (fs::read_to_string(sh).expect("script"), DialectFamily::Bourne)
    } else {
        (fs::read_to_string(csh).expect("script"), DialectFamily::CFamily)
    }
}

#[test]
fn fixtures_reproduce_their_recorded_traces() {
    let dirs = fixture_dirs();
    assert!(dirs.len() >= 19, "expected at least 19 fixtures, found {}", dirs.len());
    let mut failures = Vec::new();
    for dir in &dirs {
        let name = dir.file_name().unwrap().to_string_lossy().to_string();
        let (source, family) = load_script(dir);
        let stdin = fs::read_to_string(dir.join("stdin.txt")).unwrap_or_default();
        let expected: serde_json::Value = serde_json::from_str(
            &fs::read_to_string(dir.join("expected.trace.json")).expect("expected trace"),
        )
        .expect("valid JSON trace");

        let ast = match parse_script(&source, family) {
            Ok(ast) => ast,
            Err(diag) => {
                failures.push(format!("{name}: parse error: {}", diag.message));
                continue;
            }
        };
        let trace = execute(&ast, ExecutionConfig::new(family).with_stdin(&stdin));
        let actual = serde_json::to_value(&trace).expect("serializable trace");
        if actual == expected {
            println!("fixture {name}: ok");
        } else {
            failures.push(format!(
                "{name}: trace mismatch\n  expected: {expected}\n  actual:   {actual}"
            ));
        }
    }
    assert!(
        failures.is_empty(),
        "{} fixture(s) diverged:\n{}",
        failures.len(),
        failures.join("\n")
    );
}

#[test]
fn fixture_scripts_detect_as_their_own_family() {
    let mut decided = 0;
    for dir in fixture_dirs() {
        let (source, family) = load_script(&dir);
        let verdict = twosh::detector::detect(&source);
        match verdict.family {
            Some(detected) => {
                assert_eq!(
                    detected,
                    family,
                    "{} detected as {} (confidence {:.2})",
                    dir.display(),
                    verdict.label(),
                    verdict.confidence
                );
                assert!(verdict.confidence > 0.5);
                decided += 1;
            }
            // A marker-free script (text shared verbatim by both families)
            // must stay ambiguous rather than guess.
            None => assert!(
                verdict.evidence.is_empty(),
                "{} has evidence yet stayed ambiguous",
                dir.display()
            ),
        }
    }
    assert!(decided >= 17, "only {decided} fixtures detected positively");
}

#[test]
fn fixture_scripts_render_back_to_equivalent_asts() {
    for dir in fixture_dirs() {
        let (source, family) = load_script(&dir);
        let ast = parse_script(&source, family).expect("fixture parses");
        let rendered = twosh::renderer::render_script(&ast, family).expect("fixture renders");
        let reparsed = parse_script(&rendered, family).expect("rendered text parses");
        assert_eq!(
            ast.statements, reparsed.statements,
            "round-trip changed {}",
            dir.display()
        );
    }
}

/// Fixtures whose scripts use constructs with no counterpart in the other
/// family; the translator must refuse these rather than approximate.
const UNTRANSLATABLE: &[&str] = &[
    "alias1",    // alias definitions
    "array1",    // list variables and subscripts
    "export1",   // export
    "readonly1", // readonly
    "select1",   // select menus
    "until1",    // command-status loop condition
];

#[test]
fn translatable_fixtures_keep_their_stdout_and_exit_status() {
    let mut translated = 0;
    for dir in fixture_dirs() {
        let name = dir.file_name().unwrap().to_string_lossy().to_string();
        let (source, family) = load_script(&dir);
        let stdin = fs::read_to_string(dir.join("stdin.txt")).unwrap_or_default();
        let ast = parse_script(&source, family).expect("fixture parses");
        let report = twosh::translator::translate_script(
            &ast,
            family,
            family.other(),
            twosh::translator::TranslateOptions::default(),
        );
        if UNTRANSLATABLE.contains(&name.as_str()) {
            assert!(
                !report.is_total(),
                "{name} was expected to be refused but translated cleanly"
            );
            continue;
        }
        assert!(
            report.is_total(),
            "{name} failed to translate: {:?}",
            report.unsupported
        );
        let text = twosh::renderer::render_script(&report.output_ast, family.other())
            .expect("translation renders");
        let out_ast = parse_script(&text, family.other()).expect("translation reparses");
        let a = execute(&ast, ExecutionConfig::new(family).with_stdin(&stdin));
        let b = execute(&out_ast, ExecutionConfig::new(family.other()).with_stdin(&stdin));
        assert_eq!(
            a.stdout_str(),
            b.stdout_str(),
            "{name}: stdout diverged\ntranslation:\n{text}"
        );
        assert_eq!(a.exit_status, b.exit_status, "{name}: exit status diverged");
        translated += 1;
    }
    assert!(translated >= 13, "only {translated} fixtures translated");
}

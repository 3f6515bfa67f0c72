//! Release gate: one test per shipped guarantee, each printing a single
//! `criterion <n> (<name>): pass|FAIL` line (visible with `--nocapture`;
//! always visible on failure).
//!
//! The guarantees:
//!
//! 1. transcript fidelity — every recorded session reproduces byte-for-byte,
//!    including the named behaviours (the dodol echo split, the export/spawn
//!    abort, readonly refusal, array subscripts, alias resolution, reads,
//!    menus, and loops);
//! 2. translation equivalence — recorded cross-family pairs agree through the
//!    `diff` subcommand, and 500 generated programs agree byte-for-byte after
//!    translation;
//! 3. round-trip — 1000 generated trees per family re-parse to the same tree;
//! 4. detection — marker-bearing fixtures classify correctly with high
//!    confidence, marker-free text stays ambiguous;
//! 5. refusals — one-family constructs abort translation with exit 4 naming
//!    the construct, and `--lenient` downgrades each to a warning;
//! 6. safety — the step budget always trips on runaway loops, readonly
//!    survives 10,000 random environment histories, and traces are
//!    deterministic;
//! 7. JSON contract — every `--json` output validates against its schema in
//!    `docs/schemas/`.

use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use twosh::detector::detect;
use twosh::diag::codes;
use twosh::dialect::DialectFamily;
use twosh::env::{Env, Value};
use twosh::evaluator::{execute, ExecutionConfig};
use twosh::gen::{family_ast, subset_program};
use twosh::parser::parse_script;
use twosh::renderer::render_script;
use twosh::trace::ExecutionTrace;
use twosh::translator::{translate_script, TranslateOptions};

// ---------------------------------------------------------------------------
// Harness
// ---------------------------------------------------------------------------

/// Run one criterion and print its verdict line whether it passes or panics.
fn criterion(name: &str, body: impl FnOnce()) {
    let outcome = catch_unwind(AssertUnwindSafe(body));
    println!(
        "criterion {name}: {}",
        if outcome.is_ok() { "pass" } else { "FAIL" }
    );
    if let Err(cause) = outcome {
        std::panic::resume_unwind(cause);
    }
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
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

struct Fixture {
    name: String,
    dir: PathBuf,
    source: String,
    family: DialectFamily,
    stdin: String,
    expected: serde_json::Value,
}

fn script_path(dir: &Path) -> PathBuf {
    let sh = dir.join("script.sh");
    if sh.exists() {
        sh
    } else {
        dir.join("script.csh")
    }
}

fn load_fixture_dir(dir: &Path) -> Fixture {
    let path = script_path(dir);
    let family = if path.extension().is_some_and(|e| e == "sh") {
        DialectFamily::Bourne
    } else {
        DialectFamily::CFamily
    };
    Fixture {
        name: dir.file_name().unwrap().to_string_lossy().to_string(),
        dir: dir.to_path_buf(),
        source: fs::read_to_string(&path).expect("script"),
        family,
        stdin: fs::read_to_string(dir.join("stdin.txt")).unwrap_or_default(),
        expected: serde_json::from_str(
            &fs::read_to_string(dir.join("expected.trace.json")).expect("expected trace"),
        )
        .expect("valid JSON trace"),
    }
}

fn load_fixture(name: &str) -> Fixture {
    load_fixture_dir(&corpus_dir().join(name))
}

fn run_fixture(fx: &Fixture) -> ExecutionTrace {
    let ast = parse_script(&fx.source, fx.family).expect("fixture parses");
    execute(&ast, ExecutionConfig::new(fx.family).with_stdin(&fx.stdin))
}

/// Invoke the installed binary with file arguments; stdin stays closed.
fn twosh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twosh"))
        .args(args)
        .output()
        .expect("twosh binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("binary not killed by signal")
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn family_flag(family: DialectFamily) -> &'static str {
    match family {
        DialectFamily::Bourne => "bourne",
        DialectFamily::CFamily => "cfamily",
    }
}

// ---------------------------------------------------------------------------
// 1. Transcript fidelity
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_transcript_fidelity() {
    criterion("1 (transcript fidelity)", || {
        // Every recorded session must reproduce byte-for-byte: stdout,
        // stderr, and exit status.
        for dir in fixture_dirs() {
            let fx = load_fixture_dir(&dir);
            let trace = run_fixture(&fx);
            assert_eq!(
                trace.stdout_str(),
                fx.expected["stdout"].as_str().unwrap(),
                "{}: stdout diverged",
                fx.name
            );
            assert_eq!(
                trace.stderr_str(),
                fx.expected["stderr"].as_str().unwrap(),
                "{}: stderr diverged",
                fx.name
            );
            assert_eq!(
                i64::from(trace.exit_status),
                fx.expected["exit_status"].as_i64().unwrap(),
                "{}: exit status diverged",
                fx.name
            );
        }

        // The named behaviours, asserted directly so a stale recording
        // cannot mask a regression.

        // Bourne echo keeps `\n` literal; the C-family echo decodes it.
        let dodol_b = run_fixture(&load_fixture("dodol_bash"));
        assert_eq!(dodol_b.stdout_str(), "Universitas \\n Budi Luhur\n");
        let dodol_c = run_fixture(&load_fixture("dodol_csh"));
        assert_eq!(dodol_c.stdout_str(), "Universitas \n Budi Luhur\n");

        // Export session: only the exported variable crosses into a child
        // shell; a C-family child aborts on the unexported name.
        let export = load_fixture("export1");
        let parent = run_fixture(&export);
        assert_eq!(parent.stdout_str(), "10\n20\n");
        assert!(parent.final_env.lookup("a2").unwrap().exported);
        assert!(!parent.final_env.lookup("a1").unwrap().exported);
        let child_ast =
            parse_script("echo $a2\necho $a1\n", DialectFamily::CFamily).expect("child parses");
        let mut child_cfg = ExecutionConfig::new(DialectFamily::CFamily);
        child_cfg.initial_env = parent.final_env.spawn_child(DialectFamily::CFamily);
        let child = execute(&child_ast, child_cfg);
        assert_eq!(child.stdout_str(), "20\n");
        assert_eq!(child.stderr_str(), "a1: Undefined variable.\n");
        assert_eq!(child.exit_status, 1);
        // A Bourne child prints a blank line for the unexported name instead.
        let sh_ast =
            parse_script("echo $a1\necho $a2\n", DialectFamily::Bourne).expect("child parses");
        let mut sh_cfg = ExecutionConfig::new(DialectFamily::Bourne);
        sh_cfg.initial_env = parent.final_env.spawn_child(DialectFamily::Bourne);
        let sh_child = execute(&sh_ast, sh_cfg);
        assert_eq!(sh_child.stdout_str(), "\n20\n");
        assert_eq!(sh_child.exit_status, 0);

        // Readonly refuses unset with the canonical message and keeps the
        // binding.
        let ro = run_fixture(&load_fixture("readonly1"));
        assert_eq!(ro.stderr_str(), "unset: a2: cannot unset: readonly variable\n");
        assert_eq!(ro.exit_status, 1);
        let binding = ro.final_env.lookup("a2").unwrap();
        assert!(binding.readonly);
        assert_eq!(binding.value, Value::Scalar("20".to_string()));

        // Array session: `$#a` counts six elements, subscripts are 1-based.
        let arr = run_fixture(&load_fixture("array1"));
        let arr_stdout = arr.stdout_str();
        let lines: Vec<&str> = arr_stdout.lines().collect();
        assert_eq!(lines[1], "6");
        assert_eq!(lines[2], "Fak Budi");

        // Alias session: before the definition the name is unknown; after it
        // the alias expands to the real argv.
        let alias = run_fixture(&load_fixture("alias1"));
        assert_eq!(alias.stderr_str(), "dir: Command not found.\n");
        assert_eq!(alias.external_calls, vec![vec!["ls".to_string(), "-l".to_string()]]);

        // Read sessions answer the scripted stdin in both families.
        for name in ["read1", "read2"] {
            let trace = run_fixture(&load_fixture(name));
            assert!(
                trace.stdout_str().ends_with("namamu : deri\n"),
                "{name}: read answer missing"
            );
        }

        // Case menus print the same chosen branch in both families.
        for name in ["case1", "case2"] {
            let trace = run_fixture(&load_fixture(name));
            assert!(trace.stdout_str().contains("1. Teknik Informatika"));
            assert!(trace.stdout_str().ends_with("Pasti O.c !\n"), "{name}: branch output");
        }

        // Counter loops emit 0 then 2 in both families.
        for name in ["while1", "while2"] {
            assert_eq!(run_fixture(&load_fixture(name)).stdout_str(), "0\n2\n", "{name}");
        }

        // The until loop re-prompts for `a` and `0.5` and accepts `1`.
        let until = load_fixture("until1");
        assert_eq!(until.stdin, "a\n0.5\n1\n");
        assert_eq!(
            run_fixture(&until).stdout_str(),
            "Masukkan bil bulat : \n".repeat(3)
        );

        // repeat runs its body exactly three times.
        assert_eq!(run_fixture(&load_fixture("repeat1")).stdout_str(), "gile\ngile\ngile\n");
    });
}

// ---------------------------------------------------------------------------
// 2. Translation equivalence
// ---------------------------------------------------------------------------

#[test]
fn criterion_2_translation_equivalence() {
    criterion("2 (translation equivalence)", || {
        // The recorded cross-family pairs, through the real `diff`
        // subcommand: original and translation must match byte-for-byte.
        let pairs = [
            ("if1", DialectFamily::Bourne),
            ("if2", DialectFamily::CFamily),
            ("case1", DialectFamily::Bourne),
            ("case2", DialectFamily::CFamily),
            ("while1", DialectFamily::Bourne),
            ("while2", DialectFamily::CFamily),
            ("dodol_bash", DialectFamily::Bourne),
            ("dodol_csh", DialectFamily::CFamily),
        ];
        for (name, family) in pairs {
            let dir = corpus_dir().join(name);
            let script = script_path(&dir);
            let script = script.to_str().unwrap();
            let stdin = dir.join("stdin.txt");
            let mut args = vec![
                "diff",
                script,
                "--from",
                family_flag(family),
                "--to",
                family_flag(family.other()),
            ];
            let stdin_arg;
            if stdin.exists() {
                stdin_arg = stdin.to_str().unwrap().to_string();
                args.push("--stdin");
                args.push(&stdin_arg);
            }
            let out = twosh(&args);
            assert_eq!(
                exit_code(&out),
                0,
                "{name}: diff reported a mismatch\n{}",
                String::from_utf8_lossy(&out.stdout)
            );
        }

        // 500 generated programs: translate, re-parse, run both against the
        // same stdin, and require identical stdout bytes and exit status.
        for seed in 0..500u64 {
            let prog = subset_program(seed);
            let target = prog.family.other();
            let report =
                translate_script(&prog.ast, prog.family, target, TranslateOptions::default());
            assert!(
                report.is_total(),
                "seed {seed}: translation refused: {:?}",
                report.unsupported
            );
            let text = render_script(&report.output_ast, target).expect("translation renders");
            let out_ast = parse_script(&text, target).expect("translation parses");
            let a = execute(
                &prog.ast,
                ExecutionConfig::new(prog.family).with_stdin(&prog.stdin),
            );
            let b = execute(&out_ast, ExecutionConfig::new(target).with_stdin(&prog.stdin));
            assert_eq!(
                a.stdout_str(),
                b.stdout_str(),
                "seed {seed}: stdout diverged\ntranslation:\n{text}"
            );
            assert_eq!(a.exit_status, b.exit_status, "seed {seed}: exit status diverged");
        }

        // A sample of the generated programs through the binary as well, so
        // the subcommand's own verdict is exercised end to end.
        let scratch = tempfile::tempdir().expect("temp dir");
        for seed in (0..500u64).step_by(50) {
            let prog = subset_program(seed);
            let source = render_script(&prog.ast, prog.family).expect("source renders");
            let script = scratch.path().join(format!("gen{seed}.txt"));
            fs::write(&script, source).expect("write script");
            let stdin = scratch.path().join(format!("gen{seed}.stdin"));
            fs::write(&stdin, &prog.stdin).expect("write stdin");
            let out = twosh(&[
                "diff",
                script.to_str().unwrap(),
                "--from",
                family_flag(prog.family),
                "--to",
                family_flag(prog.family.other()),
                "--stdin",
                stdin.to_str().unwrap(),
            ]);
            assert_eq!(
                exit_code(&out),
                0,
                "seed {seed}: binary diff mismatch\n{}",
                String::from_utf8_lossy(&out.stdout)
            );
        }
    });
}

// ---------------------------------------------------------------------------
// 3. Round-trip
// ---------------------------------------------------------------------------

#[test]
fn criterion_3_round_trip() {
    criterion("3 (render/parse round-trip)", || {
        for family in [DialectFamily::Bourne, DialectFamily::CFamily] {
            for seed in 0..1000u64 {
                let ast = family_ast(seed, family);
                let text = render_script(&ast, family)
                    .unwrap_or_else(|e| panic!("seed {seed} {family:?}: render failed: {e:?}"));
                let back = parse_script(&text, family)
                    .unwrap_or_else(|e| panic!("seed {seed} {family:?}: re-parse failed: {e:?}\n{text}"));
                assert_eq!(
                    ast.statements, back.statements,
                    "seed {seed} {family:?}: round-trip changed the tree\n{text}"
                );
            }
        }
    });
}

// ---------------------------------------------------------------------------
// 4. Detection
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_detection() {
    criterion("4 (dialect detection)", || {
        let mut decided = 0;
        for dir in fixture_dirs() {
            let fx = load_fixture_dir(&dir);
            let verdict = detect(&fx.source);
            if fx.name.starts_with("dodol") {
                // The one marker-free pair: the same text is valid in both
                // families, so claiming either would be a guess.
                assert!(verdict.family.is_none(), "{}: guessed a family", fx.name);
                assert!(verdict.evidence.is_empty());
            } else {
                assert_eq!(
                    verdict.family,
                    Some(fx.family),
                    "{}: wrong family (confidence {:.2})",
                    fx.name,
                    verdict.confidence
                );
                assert!(
                    verdict.confidence >= 0.9,
                    "{}: confidence {:.2} below 0.9",
                    fx.name,
                    verdict.confidence
                );
                decided += 1;
            }
        }
        assert_eq!(decided, 17, "expected 17 marker-bearing fixtures");

        let verdict = detect("echo hello\n");
        assert!(verdict.family.is_none(), "`echo hello` must stay ambiguous");
    });
}

// ---------------------------------------------------------------------------
// 5. Refusals
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_refusals() {
    criterion("5 (strict refusals, lenient drops)", || {
        // (fixture, target family, construct named in the message, dropped
        // statements under --lenient; None = at least one)
        let cases: &[(&str, DialectFamily, &str, Option<usize>)] = &[
            ("select1", DialectFamily::CFamily, "select", Some(1)),
            ("export1", DialectFamily::CFamily, "export", Some(1)),
            ("readonly1", DialectFamily::CFamily, "readonly", Some(1)),
            ("alias1", DialectFamily::Bourne, "alias", Some(1)),
            ("array1", DialectFamily::Bourne, "list", None),
        ];
        for &(name, target, construct, drops) in cases {
            let fx = load_fixture(name);
            let script = script_path(&fx.dir);
            let script = script.to_str().unwrap();
            let from = family_flag(fx.family);
            let to = family_flag(target);
            assert_eq!(fx.family.other(), target, "{name}: case table is stale");

            let strict = twosh(&["translate", script, "--from", from, "--to", to]);
            assert_eq!(exit_code(&strict), 4, "{name}: strict translation did not refuse");
            let strict_err = stderr_text(&strict).to_lowercase();
            assert!(
                strict_err.contains(construct),
                "{name}: refusal does not name `{construct}`:\n{strict_err}"
            );

            let lenient =
                twosh(&["translate", script, "--from", from, "--to", to, "--lenient"]);
            assert_eq!(exit_code(&lenient), 0, "{name}: lenient translation failed");
            let warnings: Vec<&str> = lenient
                .stderr
                .split(|&b| b == b'\n')
                .filter_map(|line| std::str::from_utf8(line).ok())
                .filter(|line| line.starts_with("twosh:"))
                .collect();
            match drops {
                Some(n) => assert_eq!(
                    warnings.len(),
                    n,
                    "{name}: expected {n} lenient warning(s), got {warnings:?}"
                ),
                None => assert!(!warnings.is_empty(), "{name}: no lenient warnings"),
            }
            assert!(
                warnings.iter().any(|w| w.to_lowercase().contains(construct)),
                "{name}: warnings do not name `{construct}`: {warnings:?}"
            );
        }
    });
}

// ---------------------------------------------------------------------------
// 6. Safety
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_safety() {
    criterion("6 (step budget, readonly stickiness, determinism)", || {
        // A runaway loop must always trip the step budget, at any limit.
        let spinners = [
            (DialectFamily::Bourne, "a=0\nwhile test 0 -eq 0\ndo\n  a=1\ndone\n"),
            (DialectFamily::CFamily, "set a = 0\nwhile (0 == 0)\n  set a = 1\nend\n"),
        ];
        for (family, source) in spinners {
            for limit in [1u64, 64, 4096] {
                let ast = parse_script(source, family).expect("spinner parses");
                let mut cfg = ExecutionConfig::new(family);
                cfg.step_limit = limit;
                let trace = execute(&ast, cfg);
                assert!(
                    trace
                        .diagnostics
                        .iter()
                        .any(|d| d.code == codes::STEP_LIMIT_EXCEEDED),
                    "{family:?} at limit {limit}: loop escaped the budget"
                );
                assert_eq!(trace.exit_status, 1);
            }
        }
        // Terminating programs never trip the default budget.
        for seed in 0..100u64 {
            let prog = subset_program(seed);
            let trace = execute(
                &prog.ast,
                ExecutionConfig::new(prog.family).with_stdin(&prog.stdin),
            );
            assert!(
                trace
                    .diagnostics
                    .iter()
                    .all(|d| d.code != codes::STEP_LIMIT_EXCEEDED),
                "seed {seed}: terminating program hit the budget"
            );
        }

        // Readonly stickiness under 10,000 random environment histories,
        // checked against an independent shadow model after every operation.
        #[derive(Clone, PartialEq, Debug)]
        struct Shadow {
            value: Value,
            exported: bool,
            readonly: bool,
        }
        let names = ["a1", "a2", "b"];
        let mut rng = StdRng::seed_from_u64(0x7005);
        for sequence in 0..10_000u32 {
            let mut env = Env::new();
            let mut model: BTreeMap<String, Shadow> = BTreeMap::new();
            for step in 0..8 {
                let name = names[rng.gen_range(0..names.len())];
                match rng.gen_range(0..5) {
                    0 => {
                        let value = Value::Scalar(format!("v{}", rng.gen_range(0..100)));
                        let result = env.set(name, value.clone());
                        match model.get_mut(name) {
                            Some(entry) if entry.readonly => assert!(
                                result.is_err(),
                                "seq {sequence} step {step}: write to readonly `{name}` succeeded"
                            ),
                            Some(entry) => {
                                assert!(result.is_ok());
                                entry.value = value;
                            }
                            None => {
                                assert!(result.is_ok());
                                model.insert(
                                    name.to_string(),
                                    Shadow { value, exported: false, readonly: false },
                                );
                            }
                        }
                    }
                    1 => {
                        env.mark_export(name);
                        model
                            .entry(name.to_string())
                            .or_insert_with(|| Shadow {
                                value: Value::Scalar(String::new()),
                                exported: false,
                                readonly: false,
                            })
                            .exported = true;
                    }
                    2 => {
                        env.mark_readonly(name);
                        model
                            .entry(name.to_string())
                            .or_insert_with(|| Shadow {
                                value: Value::Scalar(String::new()),
                                exported: false,
                                readonly: false,
                            })
                            .readonly = true;
                    }
                    3 => {
                        let result = env.unset(name);
                        match model.get(name) {
                            Some(entry) if entry.readonly => assert!(
                                result.is_err(),
                                "seq {sequence} step {step}: unset of readonly `{name}` succeeded"
                            ),
                            _ => {
                                assert!(result.is_ok());
                                model.remove(name);
                            }
                        }
                    }
                    _ => {
                        // Spawning keeps exported values only and resets the
                        // flags' stickiness scope to the new shell.
                        env = env.spawn_child(DialectFamily::CFamily);
                        model.retain(|_, entry| entry.exported);
                        for entry in model.values_mut() {
                            entry.readonly = false;
                        }
                    }
                }
                // Model equivalence after every operation.
                assert_eq!(env.len(), model.len(), "seq {sequence} step {step}");
                for (name, entry) in &model {
                    let binding = env
                        .lookup(name)
                        .unwrap_or_else(|| panic!("seq {sequence}: `{name}` vanished"));
                    assert_eq!(binding.value, entry.value, "seq {sequence}: `{name}` value");
                    assert_eq!(binding.exported, entry.exported);
                    assert_eq!(binding.readonly, entry.readonly);
                }
            }
        }

        // Determinism: the same fixture yields byte-identical traces.
        for dir in fixture_dirs() {
            let fx = load_fixture_dir(&dir);
            let first = serde_json::to_vec(&run_fixture(&fx)).unwrap();
            let second = serde_json::to_vec(&run_fixture(&fx)).unwrap();
            assert_eq!(first, second, "{}: trace bytes differ between runs", fx.name);
        }
    });
}

// ---------------------------------------------------------------------------
// 7. JSON contract
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_json_contract() {
    criterion("7 (JSON output matches the published schemas)", || {
        let load_validator = |file: &str| {
            let text = fs::read_to_string(schema_dir().join(file))
                .unwrap_or_else(|e| panic!("{file}: {e}"));
            let schema: serde_json::Value = serde_json::from_str(&text).expect("schema is JSON");
            jsonschema::validator_for(&schema)
                .unwrap_or_else(|e| panic!("{file}: schema does not compile: {e}"))
        };

        let corpus = corpus_dir();
        let p = |name: &str, file: &str| {
            corpus.join(name).join(file).to_str().unwrap().to_string()
        };
        let if1 = p("if1", "script.sh");
        let if1_stdin = p("if1", "stdin.txt");
        let dodol = p("dodol_bash", "script.sh");
        let export1 = p("export1", "script.sh");
        let foreach1 = p("foreach1", "script.csh");
        let while1 = p("while1", "script.sh");
        let until1 = p("until1", "script.sh");
        let until1_stdin = p("until1", "stdin.txt");
        let array1 = p("array1", "script.csh");
        let readonly1 = p("readonly1", "script.sh");

        // (schema file, invocations whose stdout must validate against it)
        let cases: &[(&str, Vec<Vec<&str>>)] = &[
            (
                "verdict.schema.json",
                vec![
                    vec!["detect", &if1, "--json"],
                    vec!["detect", &dodol, "--json"],
                ],
            ),
            (
                "parse.schema.json",
                vec![
                    vec!["parse", &if1, "--json"],
                    vec!["parse", &if1, "--json", "--ast"],
                    vec!["parse", &foreach1, "--dialect", "bourne", "--json"],
                ],
            ),
            (
                "translation.schema.json",
                vec![
                    vec!["translate", &if1, "--from", "bourne", "--to", "cfamily", "--json"],
                    vec![
                        "translate", &export1, "--from", "bourne", "--to", "cfamily",
                        "--lenient", "--json",
                    ],
                ],
            ),
            (
                "trace.schema.json",
                vec![
                    vec!["run", &while1, "--json"],
                    vec!["run", &until1, "--stdin", &until1_stdin, "--json"],
                    vec!["run", &array1, "--json"],
                    vec!["run", &readonly1, "--json"],
                ],
            ),
            (
                "diff.schema.json",
                vec![vec![
                    "diff", &if1, "--from", "bourne", "--to", "cfamily", "--stdin", &if1_stdin,
                    "--json",
                ]],
            ),
            (
                "lint.schema.json",
                vec![
                    vec!["lint", &if1, "--json"],
                    vec!["lint", &dodol, "--json"],
                ],
            ),
        ];

        for (schema_file, invocations) in cases {
            let validator = load_validator(schema_file);
            for args in invocations {
                let out = twosh(args);
                let text = String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8");
                assert!(
                    !text.trim().is_empty(),
                    "{args:?}: no JSON on stdout (stderr: {})",
                    stderr_text(&out)
                );
                let instance: serde_json::Value = serde_json::from_str(&text)
                    .unwrap_or_else(|e| panic!("{args:?}: stdout is not JSON: {e}\n{text}"));
                let errors: Vec<String> = validator
                    .iter_errors(&instance)
                    .map(|e| format!("{e}"))
                    .collect();
                assert!(
                    errors.is_empty(),
                    "{args:?}: output violates {schema_file}:\n{}",
                    errors.join("\n")
                );
            }
        }
    });
}

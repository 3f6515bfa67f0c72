//! twosh — a toolkit for the two Unix shell-script families.
//!
//! The Bourne line (sh, bash, ksh, zsh) and the C line (csh, tcsh) share a
//! practical common subset: assignments, reads, conditionals, case switches,
//! loops, pipelines, and simple redirects. This crate models that subset as
//! one dialect-neutral AST and provides:
//!
//! - a lossless, family-sensitive [`lexer`],
//! - recursive-descent parsers for both families ([`parser`]),
//! - a marker-voting dialect [`detector`] and a mixed-syntax [`lint`] pass,
//! - a rule-based [`translator`] between the families,
//! - a deterministic [`renderer`] back to either concrete syntax,
//! - a deterministic [`evaluator`] producing byte-stable execution traces.
//!
//! The `twosh` binary wraps these as `detect`, `parse`, `translate`, `run`,
//! `diff`, and `lint` subcommands.

pub mod ast;
pub mod detector;
pub mod diag;
pub mod dialect;
pub mod env;
pub mod evaluator;
pub mod gen;
pub mod lexer;
pub mod lint;
pub mod parser;
pub mod renderer;
pub mod span;
pub mod trace;
pub mod translator;
pub mod word;

pub use ast::ScriptAst;
pub use diag::Diagnostic;
pub use dialect::DialectFamily;
pub use env::Env;
pub use trace::ExecutionTrace;

//! Cross-dialect linting: flag constructs from the other family.
//!
//! A script written for one family but containing strays from the other —
//! a `fi` in a csh script, a `set x = 1` in a bash script — is the classic
//! porting mistake this toolkit exists to catch. The linter reuses the
//! detector's evidence: given the family the script is supposed to be
//! (stated by the caller or inferred by majority), every marker from the
//! other family becomes a finding, each with a hint naming the counterpart
//! construct.

use serde::Serialize;

use crate::detector::{detect, DialectVerdict, Evidence};
use crate::dialect::DialectFamily;

#[derive(Debug, Clone, Serialize)]
pub struct LintFinding {
    /// The family the stray construct belongs to.
    pub family: DialectFamily,
    pub marker: String,
    pub line: u32,
    pub column: u32,
    pub hint: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LintReport {
    /// The family the script was checked against; `None` when the caller
    /// gave no family and detection stayed ambiguous.
    pub assumed_family: Option<DialectFamily>,
    pub verdict: DialectVerdict,
    pub findings: Vec<LintFinding>,
}

/// Lint a script. `assume` pins the family to check against; without it the
/// detector's verdict is used. If both are absent (an ambiguous script),
/// every family-specific marker is reported so the caller can see the clash.
pub fn lint(source: &str, assume: Option<DialectFamily>) -> LintReport {
    let verdict = detect(source);
    let assumed_family = assume.or(verdict.family);
    let findings = verdict
        .evidence
        .iter()
        .filter(|e| match assumed_family {
            Some(fam) => e.family != fam,
            None => true,
        })
        .map(to_finding)
        .collect();
    LintReport { assumed_family, verdict, findings }
}

fn to_finding(e: &Evidence) -> LintFinding {
    LintFinding {
        family: e.family,
        marker: e.marker.clone(),
        line: e.line,
        column: e.column,
        hint: hint_for(&e.marker, e.family),
    }
}

/// Name the counterpart construct in the other family.
fn hint_for(marker: &str, family: DialectFamily) -> String {
    let text = match (family, marker) {
        // Bourne constructs, as seen from a C-family script.
        (DialectFamily::Bourne, "fi") => "the C family closes `if` with `endif`",
        (DialectFamily::Bourne, "esac") => "the C family closes `switch` with `endsw`",
        (DialectFamily::Bourne, "done") => "the C family closes loops with `end`",
        (DialectFamily::Bourne, "do") => "C-family loop bodies follow the header line with no `do`",
        (DialectFamily::Bourne, "elif") => "the C family chains with `else if` on one line",
        (DialectFamily::Bourne, "until") => {
            "the C family has no `until`; negate the condition in a `while (! ...)` loop"
        }
        (DialectFamily::Bourne, "select") => {
            "the C family has no `select`; print the menu with `echo` and loop with `while`"
        }
        (DialectFamily::Bourne, "read") => "the C family reads a line with `set NAME = $<`",
        (DialectFamily::Bourne, "export") => {
            "the C family marks environment variables with `setenv` (outside the supported subset)"
        }
        (DialectFamily::Bourne, "readonly") => "the C family has no read-only marking",
        (DialectFamily::Bourne, "assignment") => "the C family assigns with `set NAME = VALUE`",
        (DialectFamily::Bourne, ";;") => "the C family ends a switch arm with `breaksw`",
        // C-family constructs, as seen from a Bourne script.
        (DialectFamily::CFamily, "endif") => "the Bourne family closes `if` with `fi`",
        (DialectFamily::CFamily, "endsw") => "the Bourne family closes `case` with `esac`",
        (DialectFamily::CFamily, "end") => "the Bourne family closes loops with `done`",
        (DialectFamily::CFamily, "breaksw") => "the Bourne family ends a case arm with `;;`",
        (DialectFamily::CFamily, "foreach") => {
            "the Bourne family iterates with `for NAME in ITEMS` followed by `do ... done`"
        }
        (DialectFamily::CFamily, "switch") => "the Bourne family branches with `case SUBJECT in`",
        (DialectFamily::CFamily, "repeat") => {
            "the Bourne family has no `repeat`; use a counted `while` loop"
        }
        (DialectFamily::CFamily, "default") => "the Bourne family spells the default arm `*)`",
        (DialectFamily::CFamily, "set") => "the Bourne family assigns with `NAME=VALUE`",
        (DialectFamily::CFamily, "alias") => {
            "the Bourne family has no alias statement in the supported subset"
        }
        (DialectFamily::CFamily, "@-assignment") => {
            "the Bourne family computes with backquoted `expr`, e.g. NAME=`expr ...`"
        }
        (DialectFamily::CFamily, "$<") => "the Bourne family reads a line with `read NAME`",
        _ => return format!("`{marker}` belongs to the {} family", family.name()),
    };
    text.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_scripts_have_no_findings() {
        let r = lint("read nama\necho halo $nama\n", None);
        assert_eq!(r.assumed_family, Some(DialectFamily::Bourne));
        assert!(r.findings.is_empty());
    }

    #[test]
    fn stray_other_family_closer_is_flagged_with_hint() {
        // A mostly-Bourne script with one csh closer.
        let src = "read x\nread y\nif test $x -gt 1\nthen\necho big\nendif\n";
        let r = lint(src, None);
        assert_eq!(r.assumed_family, Some(DialectFamily::Bourne));
        assert_eq!(r.findings.len(), 1);
        let f = &r.findings[0];
        assert_eq!(f.marker, "endif");
        assert_eq!(f.line, 6);
        assert!(f.hint.contains("`fi`"), "hint was: {}", f.hint);
    }

    #[test]
    fn explicit_family_overrides_detection() {
        let r = lint("set x = 1\n", Some(DialectFamily::Bourne));
        assert_eq!(r.assumed_family, Some(DialectFamily::Bourne));
        assert_eq!(r.findings.len(), 1);
        assert_eq!(r.findings[0].marker, "set");
        assert!(r.findings[0].hint.contains("NAME=VALUE"));
        // Checked as its own family the same script is clean.
        let r = lint("set x = 1\n", Some(DialectFamily::CFamily));
        assert!(r.findings.is_empty());
    }

    #[test]
    fn ambiguous_scripts_report_markers_from_both_families() {
        let r = lint("read x\nset y = 1\n", None);
        assert_eq!(r.assumed_family, None);
        assert_eq!(r.findings.len(), 2);
        let families: Vec<DialectFamily> = r.findings.iter().map(|f| f.family).collect();
        assert!(families.contains(&DialectFamily::Bourne));
        assert!(families.contains(&DialectFamily::CFamily));
    }

    #[test]
    fn every_marker_kind_has_a_specific_hint() {
        let bourne = ["fi", "esac", "done", "do", "elif", "until", "select", "read", "export", "readonly", "assignment", ";;"];
        for m in bourne {
            assert!(!hint_for(m, DialectFamily::Bourne).contains("belongs to"), "generic hint for {m}");
        }
        let cfam = ["endif", "endsw", "end", "breaksw", "foreach", "switch", "repeat", "default", "set", "alias", "@-assignment", "$<"];
        for m in cfam {
            assert!(!hint_for(m, DialectFamily::CFamily).contains("belongs to"), "generic hint for {m}");
        }
    }
}

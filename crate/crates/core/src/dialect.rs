//! The two shell-script families and the concrete dialects that belong to them.
//!
//! The toolkit models the restricted common subset shared by the Bourne line
//! (sh, bash, ksh, zsh) and the C line (csh, tcsh). Everything downstream —
//! lexing, parsing, translation, evaluation — is keyed off the family, never
//! the individual shell; the dialect table only adds display metadata such as
//! the interactive prompt glyph.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DialectFamily {
    /// sh, bash, ksh, zsh — `$` prompt, `NAME=VALUE` assignments, `fi`/`esac`/`done`.
    Bourne,
    /// csh, tcsh — `%`/`>` prompt, `set NAME = VALUE`, `endif`/`endsw`/`end`.
    CFamily,
}

impl DialectFamily {
    pub fn name(self) -> &'static str {
        match self {
            DialectFamily::Bourne => "bourne",
            DialectFamily::CFamily => "cfamily",
        }
    }

    pub fn other(self) -> DialectFamily {
        match self {
            DialectFamily::Bourne => DialectFamily::CFamily,
            DialectFamily::CFamily => DialectFamily::Bourne,
        }
    }
}

impl std::fmt::Display for DialectFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A concrete shell: its canonical name, family, and interactive prompt glyph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dialect {
    pub shell_name: &'static str,
    pub family: DialectFamily,
    pub prompt_glyph: &'static str,
}

/// Every dialect the toolkit knows about.
pub const DIALECTS: [Dialect; 6] = [
    Dialect { shell_name: "sh", family: DialectFamily::Bourne, prompt_glyph: "$" },
    Dialect { shell_name: "bash", family: DialectFamily::Bourne, prompt_glyph: "$" },
    Dialect { shell_name: "ksh", family: DialectFamily::Bourne, prompt_glyph: "$" },
    Dialect { shell_name: "zsh", family: DialectFamily::Bourne, prompt_glyph: "$" },
    Dialect { shell_name: "csh", family: DialectFamily::CFamily, prompt_glyph: "%" },
    Dialect { shell_name: "tcsh", family: DialectFamily::CFamily, prompt_glyph: ">" },
];

/// Look up a dialect by shell name.
pub fn dialect_by_name(name: &str) -> Option<Dialect> {
    DIALECTS.iter().copied().find(|d| d.shell_name == name)
}

/// Resolve a `--dialect` argument: either a shell name or a family name.
pub fn family_by_name(name: &str) -> Option<DialectFamily> {
    match name {
        "bourne" => Some(DialectFamily::Bourne),
        "cfamily" => Some(DialectFamily::CFamily),
        other => dialect_by_name(other).map(|d| d.family),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_dialect_has_family_and_prompt() {
        for d in DIALECTS {
            match d.family {
                DialectFamily::Bourne => assert_eq!(d.prompt_glyph, "$"),
                DialectFamily::CFamily => assert!(d.prompt_glyph == "%" || d.prompt_glyph == ">"),
            }
        }
    }

    #[test]
    fn family_lookup_accepts_shells_and_families() {
        assert_eq!(family_by_name("bash"), Some(DialectFamily::Bourne));
        assert_eq!(family_by_name("zsh"), Some(DialectFamily::Bourne));
        assert_eq!(family_by_name("tcsh"), Some(DialectFamily::CFamily));
        assert_eq!(family_by_name("bourne"), Some(DialectFamily::Bourne));
        assert_eq!(family_by_name("cfamily"), Some(DialectFamily::CFamily));
        assert_eq!(family_by_name("fish"), None);
    }

    #[test]
    fn tcsh_prompt_differs_from_csh() {
        assert_eq!(dialect_by_name("csh").unwrap().prompt_glyph, "%");
        assert_eq!(dialect_by_name("tcsh").unwrap().prompt_glyph, ">");
    }
}

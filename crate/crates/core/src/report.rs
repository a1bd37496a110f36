use crate::words::{Alphabet, Word};

/// Outcome of one named check. Failed checks always carry a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Word>,
    pub detail: String,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            passed: true,
            witness: None,
            detail: detail.into(),
        }
    }

    pub fn fail(name: impl Into<String>, witness: Word, detail: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            passed: false,
            witness: Some(witness),
            detail: detail.into(),
        }
    }

    /// `CHECK <name> PASS|FAIL [witness=<letters>]`
    pub fn line(&self, alphabet: &Alphabet) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        match &self.witness {
            Some(w) if !self.passed => {
                format!("CHECK {} {} witness={}", self.name, verdict, alphabet.render(w))
            }
            _ => format!("CHECK {} {}", self.name, verdict),
        }
    }
}

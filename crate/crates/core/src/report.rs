use serde::Serialize;

/// A single violated invariant, tagged with the object it concerns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub subject: String,
    pub message: String,
}

/// Outcome of validating a model, fan or splitting record.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub(crate) fn new() -> Self {
        ValidationReport {
            passed: true,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn fail(&mut self, subject: impl Into<String>, message: impl Into<String>) {
        self.passed = false;
        self.violations.push(Violation {
            subject: subject.into(),
            message: message.into(),
        });
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Collapses the violations into one line, for error messages.
    pub fn summary(&self) -> String {
        self.violations
            .iter()
            .map(|v| format!("{}: {}", v.subject, v.message))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

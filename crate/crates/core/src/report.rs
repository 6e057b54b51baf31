//! Pass/fail bookkeeping for identity checks.

use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), ..Self::default() }
    }

    /// Records one check; `detail` is only rendered on failure.
    pub fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok {
            self.failures.push(detail());
        }
        ok
    }

    /// Records an error as a failed check.
    pub fn fail(&mut self, detail: impl Into<String>) {
        self.checks += 1;
        self.failures.push(detail.into());
    }

    pub fn absorb(&mut self, other: Report) {
        self.checks += other.checks;
        self.failures.extend(other.failures.into_iter().map(|f| format!("{}: {f}", other.name)));
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "PASS {} ({} checks)", self.name, self.checks)
        } else {
            write!(f, "FAIL {} ({} of {} checks failed)", self.name, self.failures.len(), self.checks)?;
            for msg in self.failures.iter().take(5) {
                write!(f, "\n    {msg}")?;
            }
            if self.failures.len() > 5 {
                write!(f, "\n    ... {} more", self.failures.len() - 5)?;
            }
            Ok(())
        }
    }
}

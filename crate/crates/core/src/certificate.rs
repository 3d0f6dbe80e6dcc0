//! Step-by-step pass/fail reports.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// A sequence of checks. Recording stops at the first failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub title: String,
    pub steps: Vec<Step>,
}

impl Certificate {
    pub fn new(title: impl Into<String>) -> Self {
        Certificate {
            title: title.into(),
            steps: Vec::new(),
        }
    }

    /// Records a step; returns whether it passed.
    pub fn record(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) -> bool {
        self.steps.push(Step {
            name,
            passed,
            detail: detail.into(),
        });
        passed
    }

    pub fn passed(&self) -> bool {
        !self.steps.is_empty() && self.steps.iter().all(|s| s.passed)
    }

    pub fn failed_step(&self) -> Option<&Step> {
        self.steps.iter().find(|s| !s.passed)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{}: {verdict}", self.title)?;
        for s in &self.steps {
            let mark = if s.passed { "ok" } else { "FAILED" };
            writeln!(f, "  {:<10} {mark:<6} {}", s.name, s.detail)?;
        }
        Ok(())
    }
}

//! Exact per-axiom check reports.

use std::fmt;

/// One named axiom check: the number of nonzero residual terms and whether
/// the residual vanished identically.
#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub name: String,
    pub residual_terms: usize,
    pub pass: bool,
}

/// A bundle of axiom checks; `pass` holds iff every residual is identically
/// zero.
#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self { checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, residual_terms: usize) {
        self.checks.push(AxiomCheck {
            name: name.into(),
            residual_terms,
            pass: residual_terms == 0,
        });
    }

    pub fn push_flag(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(AxiomCheck {
            name: name.into(),
            residual_terms: usize::from(!pass),
            pass,
        });
    }

    pub fn extend_from(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{}: {} ({} residual terms)",
                c.name,
                if c.pass { "pass" } else { "FAIL" },
                c.residual_terms
            )?;
        }
        Ok(())
    }
}

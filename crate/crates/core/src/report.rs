//! Check reports with witnesses and explicit coverage.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;

/// Offending instance with both sides of the failed identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
}

/// Result of evaluating one instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Witness),
    /// Some term left the truncation window; the instance is not counted.
    Skipped,
}

impl Outcome {
    /// Maps `OutOfWindow` to `Skipped` and propagates other errors.
    pub fn from_result(r: crate::Result<Outcome>) -> crate::Result<Outcome> {
        match r {
            Err(Error::OutOfWindow { .. }) => Ok(Outcome::Skipped),
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub id: String,
    pub passed: bool,
    pub checked: usize,
    pub skipped: usize,
    pub failures: usize,
    pub witness: Option<Witness>,
}

impl Component {
    pub fn new(id: impl Into<String>) -> Self {
        Component { id: id.into(), passed: true, checked: 0, skipped: 0, failures: 0, witness: None }
    }

    pub fn record(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Pass => self.checked += 1,
            Outcome::Skipped => self.skipped += 1,
            Outcome::Fail(w) => {
                self.checked += 1;
                self.failures += 1;
                self.passed = false;
                if self.witness.is_none() {
                    self.witness = Some(w);
                }
            }
        }
    }

    /// Evaluates `items` in parallel and records outcomes in input order, so
    /// the first witness does not depend on scheduling.
    pub fn evaluate<T, F>(id: impl Into<String>, items: &[T], f: F) -> crate::Result<Component>
    where
        T: Sync,
        F: Fn(&T) -> crate::Result<Outcome> + Sync,
    {
        let outcomes: Vec<crate::Result<Outcome>> =
            items.par_iter().map(|it| Outcome::from_result(f(it))).collect();
        let mut c = Component::new(id);
        for o in outcomes {
            c.record(o?);
        }
        Ok(c)
    }

    /// Failed component carrying a single witness.
    pub fn failed(id: impl Into<String>, w: Witness) -> Self {
        let mut c = Component::new(id);
        c.record(Outcome::Fail(w));
        c
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub title: String,
    pub components: Vec<Component>,
    pub coverage: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(title: impl Into<String>) -> Self {
        CheckReport { title: title.into(), components: Vec::new(), coverage: Vec::new(), notes: Vec::new() }
    }

    /// Overall verdict: every component passes and something was checked.
    pub fn passed(&self) -> bool {
        self.components.iter().all(|c| c.passed) && self.checked() > 0
    }

    pub fn checked(&self) -> usize {
        self.components.iter().map(|c| c.checked).sum()
    }

    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.components.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect()
    }

    pub fn push(&mut self, c: Component) {
        self.components.push(c);
    }

    /// Appends `other`'s components, prefixing ids.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut c in other.components {
            c.id = format!("{prefix}{}", c.id);
            self.components.push(c);
        }
        self.coverage.extend(other.coverage.into_iter().map(|s| format!("{prefix}{s}")));
        self.notes.extend(other.notes);
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "1",
            "title": self.title,
            "passed": self.passed(),
            "checked": self.checked(),
            "components": self.components,
            "coverage": self.coverage,
            "notes": self.notes,
        })
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.title, if self.passed() { "PASS" } else { "FAIL" })?;
        for c in &self.components {
            write!(
                f,
                "  [{}] {} checked={} skipped={}",
                if c.passed { "ok" } else { "FAIL" },
                c.id,
                c.checked,
                c.skipped
            )?;
            if c.failures > 0 {
                write!(f, " failures={}", c.failures)?;
            }
            writeln!(f)?;
            if let Some(w) = &c.witness {
                writeln!(f, "      at {}", w.instance)?;
                writeln!(f, "      lhs = {}", w.lhs)?;
                writeln!(f, "      rhs = {}", w.rhs)?;
            }
        }
        for c in &self.coverage {
            writeln!(f, "  coverage: {c}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

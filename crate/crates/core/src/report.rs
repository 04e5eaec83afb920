//! Pass/fail reports produced by the verifiers.

use std::fmt;

/// One verified condition. Failures carry the lexicographically least
/// witness found (element indices) and a short note.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Vec<usize>,
    pub note: String,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, witness: Vec::new(), note: String::new() }
    }

    pub fn fail(name: impl Into<String>, witness: Vec<usize>, note: impl Into<String>) -> Self {
        Check { name: name.into(), passed: false, witness, note: note.into() }
    }

    /// Passes iff `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, witness: Option<Vec<usize>>) -> Self {
        match witness {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w, ""),
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, note: impl Into<String>) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, Vec::new(), note)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}]", self.title)?;
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "  {status} {}", c.name)?;
            if !c.witness.is_empty() {
                write!(f, " witness={:?}", c.witness)?;
            }
            if !c.note.is_empty() {
                write!(f, " ({})", c.note)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

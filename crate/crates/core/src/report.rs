//! Pass/fail reports for identity checks.

use serde::Serialize;

/// Maximum number of witnesses kept per entry.
pub const WITNESS_CAP: usize = 10;

/// One checked identity family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    /// Number of instances checked.
    pub checked: usize,
    pub witnesses: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckEntry {
    pub fn new(name: impl Into<String>) -> Self {
        CheckEntry {
            name: name.into(),
            passed: true,
            checked: 0,
            witnesses: Vec::new(),
            detail: None,
        }
    }

    /// Records one instance; failing instances keep their witness.
    pub fn record(&mut self, ok: bool, witness: impl Into<Vec<usize>>) -> &mut Self {
        self.checked += 1;
        if !ok {
            self.passed = false;
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(witness.into());
            }
        }
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn single(name: impl Into<String>, ok: bool) -> Self {
        let mut e = CheckEntry::new(name);
        e.record(ok, Vec::new());
        e
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport::default()
    }

    pub fn push(&mut self, e: CheckEntry) {
        self.entries.push(e);
    }

    /// Appends the entries of `other`, prefixing their names.
    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckReport) {
        for mut e in other.entries {
            e.name = format!("{prefix}{}", e.name);
            self.entries.push(e);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn failures(&self) -> Vec<&CheckEntry> {
        self.entries.iter().filter(|e| !e.passed).collect()
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|e| e.passed)
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for e in &self.entries {
            let mark = if e.passed { "pass" } else { "FAIL" };
            write!(f, "{mark} {} ({} checked)", e.name, e.checked)?;
            if !e.witnesses.is_empty() {
                write!(f, " witnesses {:?}", e.witnesses)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_are_capped() {
        let mut e = CheckEntry::new("x");
        for i in 0..25 {
            e.record(false, vec![i]);
        }
        assert!(!e.passed);
        assert_eq!(e.checked, 25);
        assert_eq!(e.witnesses.len(), WITNESS_CAP);
    }
}

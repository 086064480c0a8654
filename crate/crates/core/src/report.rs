//! Named pass/fail checks with residuals.

use crate::fmt::g17;

/// One named check. `value` is the measured residual or margin and
/// `threshold` the bound it was compared against.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub threshold: f64,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, value: f64, threshold: f64) -> Self {
        Check {
            name: name.into(),
            passed,
            value,
            threshold,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// Passes when `value <= threshold`.
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check::new(name, value <= threshold, value, threshold)
    }

    /// Passes when `value > threshold`.
    pub fn above(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check::new(name, value > threshold, value, threshold)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub title: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new(title: impl Into<String>) -> Self {
        ValidationReport {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One human-readable line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.title.is_empty() {
            out.push_str(&format!("# {}\n", self.title));
        }
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status} {} value={} threshold={}",
                c.name,
                g17(c.value),
                g17(c.threshold)
            ));
            if !c.detail.is_empty() {
                out.push_str(&format!(" ({})", c.detail));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} {}/{} checks passed\n",
            if self.all_passed() { "OK" } else { "FAILED" },
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        ));
        out
    }

    /// `key=value` lines: `check.<name>.passed`, `.value`, `.threshold`,
    /// then `all_passed`.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("check.{}.passed={}\n", c.name, c.passed));
            out.push_str(&format!("check.{}.value={}\n", c.name, g17(c.value)));
            out.push_str(&format!("check.{}.threshold={}\n", c.name, g17(c.threshold)));
        }
        out.push_str(&format!("all_passed={}\n", self.all_passed()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregates_and_serializes() {
        let mut r = ValidationReport::new("demo");
        r.push(Check::at_most("small", 1e-14, 1e-12));
        r.push(Check::above("margin", -1.0, 0.0).with_detail("x=2"));
        assert!(!r.all_passed());
        assert_eq!(r.failures().count(), 1);
        let text = r.to_text();
        assert!(text.contains("PASS small"));
        assert!(text.contains("FAIL margin value=-1 threshold=0 (x=2)"));
        let kv = r.to_key_values();
        assert!(kv.contains("check.small.passed=true\n"));
        assert!(kv.ends_with("all_passed=false\n"));
    }
}

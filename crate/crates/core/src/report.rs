//! Pass/fail reports produced by the check suites.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Property {
    pub id: String,
    pub instances: u64,
    pub passed: bool,
    /// The first failing instance, if any.
    pub witness: Option<String>,
}

impl Property {
    pub fn new(id: impl Into<String>) -> Property {
        Property { id: id.into(), instances: 0, passed: true, witness: None }
    }

    /// Records one instance; `witness` is only evaluated on the first failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.passed {
            self.passed = false;
            self.witness = Some(witness());
        }
    }

    /// Records an instance whose evaluation may have failed outright.
    pub fn record_result<E: std::fmt::Display>(&mut self, r: Result<bool, E>, witness: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, witness),
            Err(e) => self.record(false, || format!("{}: {e}", witness())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub properties: Vec<Property>,
}

impl Report {
    pub fn new(suite: impl Into<String>, properties: Vec<Property>) -> Report {
        let passed = properties.iter().all(|p| p.passed);
        Report { suite: suite.into(), passed, properties }
    }

    pub fn property(&self, id: &str) -> Option<&Property> {
        self.properties.iter().find(|p| p.id == id)
    }

    /// One line per property, e.g. `PASS axiom-1 (120 instances)`.
    pub fn render_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.suite, if self.passed { "PASS" } else { "FAIL" });
        for p in &self.properties {
            out.push_str(&format!(
                "  {} {} ({} instances)",
                if p.passed { "PASS" } else { "FAIL" },
                p.id,
                p.instances
            ));
            if let Some(w) = &p.witness {
                out.push_str(&format!(" witness: {w}"));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_kept() {
        let mut p = Property::new("x");
        p.record(true, || unreachable!());
        p.record(false, || "first".into());
        p.record(false, || "second".into());
        p.record_result::<String>(Err("boom".into()), || "third".into());
        assert_eq!((p.instances, p.passed, p.witness.as_deref()), (4, false, Some("first")));
        let r = Report::new("s", vec![p]);
        assert!(!r.passed);
        assert!(r.render_text().contains("FAIL x (4 instances) witness: first"));
    }
}

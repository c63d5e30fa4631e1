//! Check reports and their JSON and Markdown renderings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// One verified claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    /// The claim being checked, in words.
    pub paper_anchor: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actual: Option<Value>,
    pub details: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

/// A full run: the suites that ran and their checks sorted by id.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suites: Vec<String>,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(mut suites: Vec<String>, mut checks: Vec<CheckReport>) -> Self {
        suites.sort();
        checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let mut summary = Summary {
            total: checks.len(),
            ..Summary::default()
        };
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Error => summary.errors += 1,
            }
        }
        Self {
            suites,
            checks,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    /// Marks `check_id` as failed; false if no such check ran.
    pub fn inject_failure(&mut self, check_id: &str) -> bool {
        let Some(c) = self.checks.iter_mut().find(|c| c.check_id == check_id) else {
            return false;
        };
        if c.status == Status::Pass {
            self.summary.passed -= 1;
            self.summary.failed += 1;
        }
        c.status = Status::Fail;
        c.details = serde_json::json!({ "injected": true, "original": c.details.take() });
        true
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# Verification report\n\nSuites: {}\n\n{} checks: {} passed, {} failed, {} errors\n\n",
            self.suites.join(", "),
            self.summary.total,
            self.summary.passed,
            self.summary.failed,
            self.summary.errors
        ));
        out.push_str("| check | status | claim | details |\n|---|---|---|---|\n");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "**FAIL**",
                Status::Error => "**ERROR**",
            };
            let mut details = String::new();
            if let (Some(e), Some(a)) = (&c.expected, &c.actual) {
                details.push_str(&format!("expected `{e}`, got `{a}`"));
            } else if !c.details.is_null() {
                details.push_str(&format!("`{}`", c.details));
            }
            out.push_str(&format!(
                "| `{}` | {} | {} | {} |\n",
                c.check_id,
                status,
                c.paper_anchor.replace('|', "\\|"),
                details.replace('|', "\\|")
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn check(id: &str, status: Status) -> CheckReport {
        CheckReport {
            check_id: id.into(),
            paper_anchor: "claim | with pipe".into(),
            status,
            expected: None,
            actual: None,
            details: Value::Null,
        }
    }

    #[test]
    fn summary_and_ordering() {
        let r = Report::new(
            vec!["b".into(), "a".into()],
            vec![
                check("z.one", Status::Pass),
                check("a.two", Status::Error),
                check("m", Status::Fail),
            ],
        );
        assert_eq!(r.suites, ["a", "b"]);
        assert_eq!(
            r.checks
                .iter()
                .map(|c| c.check_id.as_str())
                .collect::<Vec<_>>(),
            ["a.two", "m", "z.one"]
        );
        assert_eq!(
            (r.summary.passed, r.summary.failed, r.summary.errors),
            (1, 1, 1)
        );
        assert!(!r.all_passed());
        assert!(r.to_markdown().contains("claim \\| with pipe"));
    }

    #[test]
    fn injection() {
        let mut r = Report::new(vec!["x".into()], vec![check("x.a", Status::Pass)]);
        assert!(r.all_passed());
        assert!(!r.inject_failure("x.b"));
        assert!(r.inject_failure("x.a"));
        assert!(!r.all_passed());
        assert_eq!(
            r.checks[0].details,
            json!({ "injected": true, "original": null })
        );
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}

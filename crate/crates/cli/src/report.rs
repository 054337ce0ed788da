//! Verification reports: per-check records with machine- and
//! human-readable renderings. Reports carry the exact configuration that
//! produced them, so a failure is reproducible from the report alone.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One named check with its outcome and a reproducibility detail string.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn result(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn skip(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Skip,
            detail: detail.into(),
        }
    }
}

/// Configuration snapshot embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub n_max: usize,
    pub trunc: usize,
    pub grid: Vec<String>,
    pub growth_trunc: usize,
    pub offline: bool,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: ConfigEcho,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: impl Into<String>, config: ConfigEcho, checks: Vec<Check>) -> Self {
        let mut summary = Summary {
            total: checks.len(),
            ..Summary::default()
        };
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skip => summary.skipped += 1,
            }
        }
        Report {
            suite: suite.into(),
            config,
            checks,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "## suite `{}` — {}/{} passed, {} failed, {} skipped\n\n",
            self.suite, self.summary.passed, self.summary.total, self.summary.failed,
            self.summary.skipped
        );
        out.push_str("| check | status | detail |\n|---|---|---|\n");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skip => "skip",
            };
            out.push_str(&format!(
                "| {} | {} | {} |\n",
                c.name,
                status,
                c.detail.replace('|', "\\|").replace('\n', " ")
            ));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,check,status,detail\n");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skip => "skip",
            };
            out.push_str(&format!(
                "{},{},{},\"{}\"\n",
                self.suite,
                c.name,
                status,
                c.detail.replace('"', "\"\"").replace('\n', " ")
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report::new(
            "demo",
            ConfigEcho {
                n_max: 8,
                trunc: 64,
                grid: vec!["1".into(), "1/2".into()],
                growth_trunc: 256,
                offline: true,
            },
            vec![
                Check::result("good", true, "fine"),
                Check::result("bad", false, "broken | pipe"),
                Check::skip("later", "no data"),
            ],
        )
    }

    #[test]
    fn summary_counts() {
        let r = sample();
        assert_eq!(r.summary.total, 3);
        assert_eq!(r.summary.passed, 1);
        assert_eq!(r.summary.failed, 1);
        assert_eq!(r.summary.skipped, 1);
        assert!(!r.passed());
    }

    #[test]
    fn renderings_are_deterministic() {
        assert_eq!(sample().to_json(), sample().to_json());
        assert_eq!(sample().to_markdown(), sample().to_markdown());
        let json = sample().to_json();
        assert!(json.contains("\"status\": \"fail\""));
        let csv = sample().to_csv();
        assert!(csv.starts_with("suite,check,status,detail\n"));
        assert!(csv.contains("\"broken | pipe\""));
    }
}

use serde::Serialize;
use serde_json::Value;

/// Counterexamples kept per report; the counts stay exact.
pub const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub instances: usize,
    pub passed: usize,
    pub counterexamples: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Report>,
}

impl Report {
    /// One outcome per instance; `Some(witness)` marks a failure.
    pub fn from_outcomes(suite: &str, outcomes: impl IntoIterator<Item = Option<Value>>) -> Self {
        let mut report = Report::empty(suite);
        for outcome in outcomes {
            report.record(outcome);
        }
        report
    }

    pub fn empty(suite: &str) -> Self {
        Report {
            suite: suite.to_owned(),
            instances: 0,
            passed: 0,
            counterexamples: Vec::new(),
            duration_ms: None,
            parts: Vec::new(),
        }
    }

    pub fn record(&mut self, outcome: Option<Value>) {
        self.instances += 1;
        match outcome {
            None => self.passed += 1,
            Some(w) if self.counterexamples.len() < MAX_COUNTEREXAMPLES => self.counterexamples.push(w),
            Some(_) => {}
        }
    }

    /// Sums the parts; counterexamples are tagged with their suite.
    pub fn aggregate(suite: &str, parts: Vec<Report>) -> Self {
        let mut report = Report::empty(suite);
        for part in &parts {
            report.instances += part.instances;
            report.passed += part.passed;
            for w in &part.counterexamples {
                if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    report
                        .counterexamples
                        .push(serde_json::json!({ "suite": part.suite, "witness": w }));
                }
            }
        }
        report.parts = parts;
        report
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.instances
    }

    /// Drops timing information recursively.
    pub fn without_timing(mut self) -> Self {
        self.duration_ms = None;
        self.parts = self.parts.into_iter().map(Report::without_timing).collect();
        self
    }
}

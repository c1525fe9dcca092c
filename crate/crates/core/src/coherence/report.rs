use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Nothing failed, but some part could only be checked up to a bound.
    Inconclusive,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Failure {
    pub condition: String,
    pub witness: Value,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ConfigReport {
    pub verdict: Verdict,
    pub depth: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ConfigReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self, condition: &str) -> bool {
        self.failures.iter().any(|f| f.condition == condition)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

/// Failures kept per report; the rest are counted in a note.
const MAX_FAILURES: usize = 64;

pub(crate) struct ReportBuilder {
    depth: usize,
    failures: Vec<Failure>,
    dropped: usize,
    notes: Vec<String>,
    inconclusive: bool,
}

impl ReportBuilder {
    pub fn new(depth: usize) -> ReportBuilder {
        ReportBuilder { depth, failures: Vec::new(), dropped: 0, notes: Vec::new(), inconclusive: false }
    }

    /// Records a failure of `condition` unless `ok`; the witness is only
    /// built on failure.
    pub fn require(&mut self, condition: &str, ok: bool, witness: impl FnOnce() -> Value) {
        if ok {
            return;
        }
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(Failure { condition: condition.to_string(), witness: witness() });
        } else {
            self.dropped += 1;
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn inconclusive(&mut self, note: impl Into<String>) {
        self.inconclusive = true;
        self.note(note);
    }

    pub fn finish(mut self) -> ConfigReport {
        self.failures.sort_by(|a, b| a.condition.cmp(&b.condition));
        if self.dropped > 0 {
            self.notes.push(format!("{} further failures omitted", self.dropped));
        }
        let verdict = if !self.failures.is_empty() {
            Verdict::Fail
        } else if self.inconclusive {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        ConfigReport { verdict, depth: self.depth, failures: self.failures, notes: self.notes }
    }
}

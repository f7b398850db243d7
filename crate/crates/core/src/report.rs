use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Where an identity first failed and what was left over.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    /// The offending order or `(g, n)`.
    pub at: String,
    /// Rendered nonzero residual.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    /// What identity is being checked, in words.
    pub anchor: String,
    pub verdict: Verdict,
    /// What was covered, e.g. `hbar orders 0..=9`.
    pub scope: String,
    pub failure: Option<Failure>,
    #[serde(default)]
    pub elapsed_ms: u64,
}

impl CheckResult {
    pub fn pass(id: impl Into<String>, anchor: impl Into<String>, scope: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            verdict: Verdict::Pass,
            scope: scope.into(),
            failure: None,
            elapsed_ms: 0,
        }
    }

    pub fn fail(
        id: impl Into<String>,
        anchor: impl Into<String>,
        scope: impl Into<String>,
        at: impl Into<String>,
        residual: impl Into<String>,
    ) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            verdict: Verdict::Fail,
            scope: scope.into(),
            failure: Some(Failure { at: at.into(), residual: residual.into() }),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Collects residuals for one check; passes iff none were recorded.
pub(crate) struct Residuals {
    id: String,
    anchor: String,
    first: Option<Failure>,
    count: usize,
}

impl Residuals {
    pub(crate) fn new(id: impl Into<String>, anchor: impl Into<String>) -> Self {
        Self { id: id.into(), anchor: anchor.into(), first: None, count: 0 }
    }

    /// Record a nonzero residual; only the first is kept in full.
    pub(crate) fn record(&mut self, at: impl Into<String>, residual: impl ToString) {
        self.count += 1;
        if self.first.is_none() {
            self.first = Some(Failure { at: at.into(), residual: residual.to_string() });
        }
    }

    pub(crate) fn finish(self, scope: impl Into<String>) -> CheckResult {
        match self.first {
            None => CheckResult::pass(self.id, self.anchor, scope),
            Some(f) => {
                let mut r = CheckResult::pass(self.id, self.anchor, scope);
                r.verdict = Verdict::Fail;
                let at = if self.count > 1 {
                    format!("{} (and {} more)", f.at, self.count - 1)
                } else {
                    f.at
                };
                r.failure = Some(Failure { at, residual: f.residual });
                r
            }
        }
    }
}

/// Run `f` and stamp the elapsed wall time onto its result.
pub(crate) fn timed<E>(f: impl FnOnce() -> Result<CheckResult, E>) -> Result<CheckResult, E> {
    let t = Instant::now();
    let mut r = f()?;
    r.elapsed_ms = t.elapsed().as_millis() as u64;
    Ok(r)
}

use serde::Serialize;

/// How a check decides pass or fail from its errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    /// `abs_err ≤ tol`.
    Abs,
    /// `rel_err ≤ tol`.
    Rel,
    /// `abs_err ≤ tol` or `rel_err ≤ tol`.
    Either,
    /// One-sided: `value ≤ expected`, with `abs_err` the excess.
    AtMost,
    /// One-sided: `value ≥ expected`, with `abs_err` the shortfall.
    AtLeast,
    /// Exact integer match; `tol` records the tolerance used to produce the count.
    Count,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub mode: CheckMode,
    pub pass: bool,
    pub paper_anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, value: f64, expected: f64, tol: f64, mode: CheckMode, anchor: &str) -> Self {
        let abs_err = match mode {
            CheckMode::AtMost => (value - expected).max(0.0),
            CheckMode::AtLeast => (expected - value).max(0.0),
            _ => (value - expected).abs(),
        };
        let abs_err = if value.is_nan() { f64::NAN } else { abs_err };
        let rel_err = if expected == 0.0 {
            if abs_err == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            abs_err / expected.abs()
        };
        let pass = match mode {
            CheckMode::Abs | CheckMode::AtMost | CheckMode::AtLeast => abs_err <= tol,
            CheckMode::Rel => rel_err <= tol,
            CheckMode::Either => abs_err <= tol || rel_err <= tol,
            CheckMode::Count => value == expected,
        };
        Self {
            name: name.into(),
            value,
            expected,
            abs_err,
            rel_err,
            tol,
            mode,
            pass,
            paper_anchor: anchor.to_owned(),
            note: None,
        }
    }

    /// A check whose computation itself failed.
    pub fn errored(
        name: impl Into<String>,
        expected: f64,
        tol: f64,
        mode: CheckMode,
        anchor: &str,
        err: impl ToString,
    ) -> Self {
        Self::new(name, f64::NAN, expected, tol, mode, anchor).with_note(err.to_string())
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

//! Uniform output of every verifier.

use serde::Serialize;
use std::fmt;

/// Shortest round-trip rendering of `x`, switching to exponent notation
/// for magnitudes below `1e-4` or from `1e15` on.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if x != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

/// [`fmt_num`] as a `Display` value, for [`CheckReport::param`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_num(self.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The hypotheses of the inequality do not hold for this input.
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "n/a",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A named inequality evaluated on one input.
///
/// `margin` is signed so that a non-negative value means the inequality
/// holds; each check documents how it is formed from `lhs` and `rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub verdict: Verdict,
    /// Inputs that produced the report, in insertion order.
    pub params: Vec<(String, String)>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, margin: f64, verdict: Verdict) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            margin,
            verdict,
            params: Vec::new(),
        }
    }

    /// Report whose verdict is `margin >= -tol`.
    pub fn with_margin(name: impl Into<String>, lhs: f64, rhs: f64, margin: f64, tol: f64) -> Self {
        let verdict = Verdict::from_bool(margin >= -tol);
        Self::new(name, lhs, rhs, margin, verdict)
    }

    pub fn not_applicable(name: impl Into<String>, reason: &str) -> Self {
        Self::new(name, f64::NAN, f64::NAN, f64::NAN, Verdict::NotApplicable).param("reason", reason)
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn get_param(&self, key: &str) -> Option<&str> {
        self.params
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// `k=v;k=v` rendering used in the CSV `params` column.
    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: lhs={} rhs={} margin={} [{}]",
            self.name, self.lhs, self.rhs, self.margin, self.verdict
        )
    }
}

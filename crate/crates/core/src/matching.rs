//! Geometric and symmetric-geometric comparators with a prescribed power
//! sum, and the Rényi sign pattern they induce.
//!
//! Bisection runs on `y = logit λ` so that both `λ` and `1 - λ` keep full
//! relative precision near either end of `(0, 1)`.

use serde::Serialize;

use crate::entropy::{log_power_sum, renyi, renyi_geometric, renyi_symmetric_geometric, RenyiOrder};
use crate::error::{Error, Result};
use crate::lattice::{LatticePmf, LawKind, ParametricLaw};
use crate::report::CheckReport;
use crate::scalar::bisect;

pub const BRACKET_LO: f64 = 1e-12;
pub const BRACKET_HI: f64 = 1.0 - 1e-12;
pub const MAX_ITER: usize = 200;
/// Relative residual `|Ψ(λ)/S - 1|` required of a match.
pub const RESIDUAL_TOL: f64 = 1e-12;
/// Slack on each Rényi sign condition.
pub const DOMINANCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchResult {
    pub lambda: f64,
    /// Power sum `Σ x_i^p` being matched.
    pub target: f64,
    /// `|Ψ(λ)/target - 1|`.
    pub residual: f64,
    pub iterations: usize,
}

/// Comparator family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComparatorFamily {
    Geometric,
    SymmetricGeometric,
}

impl ComparatorFamily {
    pub fn law_kind(self) -> LawKind {
        match self {
            ComparatorFamily::Geometric => LawKind::Geometric,
            ComparatorFamily::SymmetricGeometric => LawKind::SymmetricGeometric,
        }
    }

    pub fn as_str(self) -> &'static str {
        self.law_kind().as_str()
    }

    /// Geometric for monotone input, symmetric geometric for input
    /// symmetric about an integer. Log-concavity is not required here; the
    /// dominance report records it as a hypothesis.
    pub fn for_pmf(x: &LatticePmf) -> Result<Self> {
        if x.monotonicity().is_monotone() {
            return Ok(ComparatorFamily::Geometric);
        }
        match x.symmetry_center() {
            Some(c) if c.is_integer() => Ok(ComparatorFamily::SymmetricGeometric),
            _ => Err(Error::Unclassified),
        }
    }
}

/// `(log λ, log(1-λ))` at `λ = 1/(1+e^-y)`.
fn logit_logs(y: f64) -> (f64, f64) {
    (-(-y).exp().ln_1p(), -y.exp().ln_1p())
}

fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

fn log_one_minus_exp(l: f64) -> f64 {
    (-l.exp_m1()).ln()
}

/// `log Ψ(λ) = p log(1-λ) - log(1-λ^p)`.
fn log_psi(y: f64, p: f64) -> f64 {
    let (ll, l1m) = logit_logs(y);
    p * l1m - log_one_minus_exp(p * ll)
}

/// `log S(λ) = p log((1-λ)/(1+λ)) + log(1+λ^p) - log(1-λ^p)`.
fn log_s(y: f64, p: f64) -> f64 {
    let (ll, l1m) = logit_logs(y);
    p * (l1m - ll.exp().ln_1p()) + (p * ll).exp().ln_1p() - log_one_minus_exp(p * ll)
}

fn check_order(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() && p != 1.0 {
        Ok(())
    } else {
        Err(Error::BadOrder(p))
    }
}

fn solve(x: &LatticePmf, p: f64, log_family: fn(f64, f64) -> f64) -> Result<MatchResult> {
    check_order(p)?;
    if x.is_dirac() {
        return Err(Error::DiracInput);
    }
    let log_target = log_power_sum(x, p);
    let f = |y: f64| log_family(y, p) - log_target;
    let (lo, hi) = (logit(BRACKET_LO), logit(BRACKET_HI));
    // the sign at each end depends on whether p is above or below 1; bisect
    // only needs a sign change
    let found = bisect(f, lo, hi, MAX_ITER).ok_or_else(|| Error::NoBracket {
        lo: BRACKET_LO,
        hi: BRACKET_HI,
        f_lo: f(lo),
        f_hi: f(hi),
    })?;
    // pick whichever end of the final bracket has the smaller residual
    let best = [found.lo, found.root, found.hi]
        .into_iter()
        .min_by(|a, b| f(*a).abs().total_cmp(&f(*b).abs()))
        .unwrap();
    Ok(MatchResult {
        lambda: 1.0 / (1.0 + (-best).exp()),
        target: log_target.exp(),
        residual: f(best).exp_m1().abs(),
        iterations: found.iterations,
    })
}

/// `λ` with `Σ_k ((1-λ)λ^k)^p = Σ_i x_i^p`, for any non-Dirac `x` and
/// `p ∈ (0, 1) ∪ (1, ∞)`.
pub fn match_geometric(x: &LatticePmf, p: f64) -> Result<MatchResult> {
    solve(x, p, log_psi)
}

/// `λ` with `Σ_n (((1-λ)/(1+λ)) λ^|n|)^p = Σ_i x_i^p`.
pub fn match_symmetric_geometric(x: &LatticePmf, p: f64) -> Result<MatchResult> {
    solve(x, p, log_s)
}

pub fn match_family(x: &LatticePmf, p: f64, family: ComparatorFamily) -> Result<MatchResult> {
    match family {
        ComparatorFamily::Geometric => match_geometric(x, p),
        ComparatorFamily::SymmetricGeometric => match_symmetric_geometric(x, p),
    }
}

/// Matched comparator and one sign check per order in the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceReport {
    pub family: ComparatorFamily,
    pub matched: MatchResult,
    pub rows: Vec<CheckReport>,
}

impl DominanceReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(CheckReport::passed)
    }

    pub fn min_margin(&self) -> f64 {
        self.rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min)
    }

    pub fn comparator(&self) -> ParametricLaw {
        ParametricLaw::new(self.family.law_kind(), self.matched.lambda).expect("matched λ lies in (0, 1)")
    }
}

/// Matches `Z` at order `p` and checks, for each `q`, that
/// `H_q(X) >= H_q(Z)` when `q >= p` and `H_q(X) <= H_q(Z)` when `q <= p`.
/// The comparator family is chosen by [`ComparatorFamily::for_pmf`].
pub fn renyi_dominance_report(x: &LatticePmf, p: f64, q_grid: &[RenyiOrder]) -> Result<DominanceReport> {
    let family = ComparatorFamily::for_pmf(x)?;
    renyi_dominance_report_with(x, p, q_grid, family)
}

/// As [`renyi_dominance_report`] with an explicit comparator family.
pub fn renyi_dominance_report_with(
    x: &LatticePmf,
    p: f64,
    q_grid: &[RenyiOrder],
    family: ComparatorFamily,
) -> Result<DominanceReport> {
    let matched = match_family(x, p, family)?;
    let lambda = matched.lambda;
    let log_concave = x.is_log_concave();
    let mut rows = Vec::with_capacity(q_grid.len());
    for &q in q_grid {
        let hx = renyi(x, q);
        let hz = match family {
            ComparatorFamily::Geometric => renyi_geometric(lambda, q)?,
            ComparatorFamily::SymmetricGeometric => renyi_symmetric_geometric(lambda, q)?,
        };
        let qv = q.value();
        let (margin, relation) = if qv >= p { (hx - hz, ">=") } else { (hz - hx, "<=") };
        rows.push(
            CheckReport::with_margin("renyi_dominance", hx, hz, margin, DOMINANCE_TOL)
                .param("p", p)
                .param("q", q)
                .param("relation", relation)
                .param("family", family.as_str())
                .param("lambda", lambda)
                .param("log_concave", log_concave),
        );
    }
    Ok(DominanceReport { family, matched, rows })
}

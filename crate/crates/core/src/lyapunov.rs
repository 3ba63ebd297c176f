//! The functional `Φ_x(t) = log(t Σ x_i^t)`, its second derivative, grid
//! concavity checks and the two-point counterexample for the shifted
//! variant `log((t + γ) Σ y_n^(t/γ))`.

use serde::Serialize;

use crate::entropy::{log_power_sum, log_power_sum_geometric, log_power_sum_seq};
use crate::error::{Error, Result};
use crate::lattice::{normalize, LatticePmf};
use crate::report::{CheckReport, Verdict};
use crate::scalar::{log_grid, log_sum_exp, stable_sum};

/// Tolerance on `Φ''` and on normalized second differences.
pub const CONCAVITY_TOL: f64 = 1e-9;

pub const DEFAULT_T_MIN: f64 = 0.05;
pub const DEFAULT_T_MAX: f64 = 40.0;
pub const DEFAULT_POINTS: usize = 256;

pub fn phi(x: &LatticePmf, t: f64) -> f64 {
    t.ln() + log_power_sum(x, t)
}

/// `Φ` for an arbitrary positive sequence (no normalization assumed).
pub fn phi_seq(w: &[f64], t: f64) -> f64 {
    t.ln() + log_power_sum_seq(w, t)
}

/// `log t + t log(1-λ) - log(1-λ^t)`.
pub fn phi_geometric(lambda: f64, t: f64) -> Result<f64> {
    Ok(t.ln() + log_power_sum_geometric(lambda, t)?)
}

/// `Φ''(t)`: the variance of `log x` under the tilt `x^t / Σ x^t`, minus
/// `1/t²`. Works on unnormalized sequences.
pub fn phi_second_derivative_seq(w: &[f64], t: f64) -> f64 {
    let logs: Vec<f64> = w.iter().filter(|&&v| v > 0.0).map(|v| v.ln()).collect();
    let scaled: Vec<f64> = logs.iter().map(|l| t * l).collect();
    let log_z = log_sum_exp(&scaled);
    let probs: Vec<f64> = scaled.iter().map(|s| (s - log_z).exp()).collect();
    let mean = stable_sum(probs.iter().zip(&logs).map(|(p, l)| p * l));
    let var = stable_sum(probs.iter().zip(&logs).map(|(p, l)| p * (l - mean) * (l - mean)));
    var - 1.0 / (t * t)
}

pub fn phi_second_derivative(x: &LatticePmf, t: f64) -> f64 {
    phi_second_derivative_seq(x.weights(), t)
}

/// `(λ^t log²λ^t - (1-λ^t)²) / ((1-λ^t) t)²`.
pub fn phi_second_derivative_geometric(lambda: f64, t: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::BadLambda(lambda));
    }
    let log_lt = t * lambda.ln();
    let lt = log_lt.exp();
    let one_minus = -log_lt.exp_m1();
    Ok((lt * log_lt * log_lt - one_minus * one_minus) / ((one_minus * t) * (one_minus * t)))
}

/// `Φ((1-s)p + sq) - (1-s)Φ(p) - sΦ(q)`; non-negative under concavity.
pub fn local_concavity_gap(x: &LatticePmf, p: f64, q: f64, s: f64) -> f64 {
    phi(x, (1.0 - s) * p + s * q) - (1.0 - s) * phi(x, p) - s * phi(x, q)
}

/// Result of a grid concavity check of `Φ_x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcavityReport {
    pub grid: Vec<f64>,
    pub phi: Vec<f64>,
    /// Analytic `Φ''` at every grid node.
    pub phi_second: Vec<f64>,
    /// Divided-difference estimates of `Φ''` at the interior nodes.
    pub second_differences: Vec<f64>,
    pub max_second_difference: f64,
    pub max_phi_second: f64,
    /// Smallest slack `tol_i - D_i` over the interior nodes, where `tol_i`
    /// is [`CONCAVITY_TOL`] plus the rounding floor of the divided difference.
    pub min_difference_slack: f64,
    pub concave: bool,
    /// First `(t_{i-1}, t_i, t_{i+1})` where a violation was seen.
    pub witness: Option<[f64; 3]>,
}

impl ConcavityReport {
    pub fn to_check(&self) -> CheckReport {
        CheckReport::new(
            "phi_concavity",
            self.max_phi_second,
            CONCAVITY_TOL,
            CONCAVITY_TOL - self.max_phi_second,
            Verdict::from_bool(self.concave),
        )
        .param("t_min", self.grid[0])
        .param("t_max", self.grid[self.grid.len() - 1])
        .param("points", self.grid.len())
        .param("max_second_difference", self.max_second_difference)
    }
}

/// Evaluates `Φ_x` on a log-spaced grid and checks concavity both through
/// the analytic `Φ''` and through normalized second differences.
pub fn check_concavity(x: &LatticePmf, t_min: f64, t_max: f64, n_points: usize) -> Result<ConcavityReport> {
    check_concavity_seq(x.weights(), t_min, t_max, n_points)
}

pub fn check_concavity_default(x: &LatticePmf) -> ConcavityReport {
    check_concavity(x, DEFAULT_T_MIN, DEFAULT_T_MAX, DEFAULT_POINTS).expect("default grid is valid")
}

pub fn check_concavity_seq(w: &[f64], t_min: f64, t_max: f64, n_points: usize) -> Result<ConcavityReport> {
    if !(t_min > 0.0 && t_max > t_min && t_max.is_finite()) {
        return Err(Error::InvalidParameter(format!("need 0 < t_min < t_max, got [{t_min}, {t_max}]")));
    }
    if n_points < 3 {
        return Err(Error::InvalidParameter(format!("need at least 3 grid points, got {n_points}")));
    }
    let grid = log_grid(t_min, t_max, n_points);
    let phi: Vec<f64> = grid.iter().map(|&t| phi_seq(w, t)).collect();
    let phi_second: Vec<f64> = grid.iter().map(|&t| phi_second_derivative_seq(w, t)).collect();

    let mut second_differences = Vec::with_capacity(n_points - 2);
    let mut min_difference_slack = f64::INFINITY;
    let mut witness = None;
    for i in 1..n_points - 1 {
        let (h0, h1) = (grid[i] - grid[i - 1], grid[i + 1] - grid[i]);
        let d = 2.0 * ((phi[i + 1] - phi[i]) / h1 - (phi[i] - phi[i - 1]) / h0) / (h0 + h1);
        let rounding = 4.0 * f64::EPSILON * (phi[i - 1].abs() + 2.0 * phi[i].abs() + phi[i + 1].abs()) / (h0 * h1);
        let slack = CONCAVITY_TOL + rounding - d;
        min_difference_slack = min_difference_slack.min(slack);
        if witness.is_none() && (slack < 0.0 || phi_second[i] > CONCAVITY_TOL) {
            witness = Some([grid[i - 1], grid[i], grid[i + 1]]);
        }
        second_differences.push(d);
    }
    if witness.is_none() {
        let ends = [(0, [grid[0], grid[0], grid[1]]), (n_points - 1, [grid[n_points - 2], grid[n_points - 1], grid[n_points - 1]])];
        for (i, triple) in ends {
            if phi_second[i] > CONCAVITY_TOL {
                witness = Some(triple);
                break;
            }
        }
    }
    let max_second_difference = second_differences.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let max_phi_second = phi_second.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(ConcavityReport {
        grid,
        phi,
        phi_second,
        second_differences,
        max_second_difference,
        max_phi_second,
        min_difference_slack,
        concave: witness.is_none(),
        witness,
    })
}

/// `log((t + γ) Σ_n y_n^(t/γ))` for a positive sequence `y`.
pub fn extended_phi(y: &[f64], gamma: f64, t: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::Domain(format!("gamma must be positive, got {gamma}")));
    }
    if !(t > -gamma) {
        return Err(Error::Domain(format!("t = {t} must exceed -gamma = {}", -gamma)));
    }
    if y.is_empty() || y.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::Domain("y must be a non-empty positive sequence".into()));
    }
    Ok((t + gamma).ln() + log_power_sum_seq(y, t / gamma))
}

/// Two-atom sequence `y = (λ, 1 + λ)` evaluated at `t ∈ {0, γ, 2γ}`.
///
/// `lhs`/`rhs` carry `4γ²(2λ+1)` and `6γ²(λ² + (1+λ)²)`. The verdict comes
/// from the exact comparison `2Φ(γ) < Φ(0) + Φ(2γ)`, i.e.
/// `4γ²(2λ+1)² < 6γ²(λ² + (1+λ)²)`, which holds exactly when
/// `λ < (√3 - 1)/2`. `Pass` means concavity is violated at these points.
pub fn counterexample_check(lambda: f64, gamma: f64) -> Result<CheckReport> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
    }
    let y = [lambda, 1.0 + lambda];
    let phi_0 = extended_phi(&y, gamma, 0.0)?;
    let phi_1 = extended_phi(&y, gamma, gamma)?;
    let phi_2 = extended_phi(&y, gamma, 2.0 * gamma)?;
    let g2 = gamma * gamma;
    let lhs = 4.0 * g2 * (2.0 * lambda + 1.0);
    let rhs = 6.0 * g2 * (lambda * lambda + (1.0 + lambda) * (1.0 + lambda));
    let exact_lhs = 4.0 * g2 * (2.0 * lambda + 1.0) * (2.0 * lambda + 1.0);
    let violation = (phi_0 + phi_2) - 2.0 * phi_1;
    let violated = violation > 0.0;
    Ok(CheckReport::new(
        "extended_phi_counterexample",
        lhs,
        rhs,
        violation,
        Verdict::from_bool(violated),
    )
    .param("lambda", lambda)
    .param("gamma", gamma)
    .param("exact_lhs", exact_lhs)
    .param("phi_0", phi_0)
    .param("phi_gamma", phi_1)
    .param("phi_2gamma", phi_2)
    .param("concavity", if violated { "violated" } else { "holds" }))
}

/// Largest `Φ''` found by a witness scan, and where.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessScan {
    pub pmf: LatticePmf,
    pub t: f64,
    pub phi_second: f64,
    pub candidates: usize,
}

impl WitnessScan {
    pub fn found(&self, threshold: f64) -> bool {
        self.phi_second > threshold
    }
}

fn scan_candidates<I>(candidates: I) -> WitnessScan
where
    I: IntoIterator<Item = Vec<f64>>,
{
    let grid = log_grid(DEFAULT_T_MIN, DEFAULT_T_MAX, DEFAULT_POINTS);
    let mut best: Option<WitnessScan> = None;
    let mut count = 0;
    for w in candidates {
        count += 1;
        for &t in &grid {
            let d = phi_second_derivative_seq(&w, t);
            if best.as_ref().is_none_or(|b| d > b.phi_second) {
                best = Some(WitnessScan {
                    pmf: normalize(&w, -((w.len() as i64 - 1) / 2)).expect("positive weights"),
                    t,
                    phi_second: d,
                    candidates: 0,
                });
            }
        }
    }
    let mut best = best.expect("scan has at least one candidate");
    best.candidates = count;
    best
}

/// Scans `(a, 1-2a, a)` for `a` on a uniform grid of `resolution` points
/// inside `(0, 1/2)`, over the default `t` grid.
pub fn scan_three_atom_symmetric(resolution: usize) -> WitnessScan {
    let n = resolution.max(1);
    scan_candidates((1..=n).map(|k| {
        let a = 0.5 * k as f64 / (n + 1) as f64;
        vec![a, 1.0 - 2.0 * a, a]
    }))
}

/// Scans log-concave `(a, b, c, b, a)` with `c = 1 - 2a - 2b`, for `a, b`
/// on a `resolution × resolution` grid.
pub fn scan_five_atom_symmetric(resolution: usize) -> WitnessScan {
    let n = resolution.max(1);
    let mut candidates = Vec::new();
    for i in 1..=n {
        let a = 0.25 * i as f64 / (n + 1) as f64;
        for j in 1..=n {
            let b = 0.5 * j as f64 / (n + 1) as f64;
            let c = 1.0 - 2.0 * a - 2.0 * b;
            if c <= 0.0 {
                continue;
            }
            let w = vec![a, b, c, b, a];
            if crate::lattice::is_log_concave_seq(&w) {
                candidates.push(w);
            }
        }
    }
    scan_candidates(candidates)
}

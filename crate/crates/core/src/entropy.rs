//! Power sums, Rényi entropies, varentropy and exponential tilts.
//!
//! All entropies are in nats. Terms with zero mass contribute nothing to
//! the Shannon and varentropy sums.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{normalize, LatticePmf, LawKind, ParametricLaw};
use crate::scalar::{log_sum_exp, stable_sum};

/// Order of a Rényi entropy: `0`, a finite `p > 0`, or `∞`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct RenyiOrder(f64);

impl RenyiOrder {
    pub const HARTLEY: RenyiOrder = RenyiOrder(0.0);
    pub const SHANNON: RenyiOrder = RenyiOrder(1.0);
    pub const COLLISION: RenyiOrder = RenyiOrder(2.0);
    pub const MIN_ENTROPY: RenyiOrder = RenyiOrder(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 0.0 {
            return Err(Error::BadOrder(p));
        }
        Ok(RenyiOrder(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_shannon(self) -> bool {
        self.0 == 1.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

impl From<RenyiOrder> for f64 {
    fn from(p: RenyiOrder) -> f64 {
        p.0
    }
}

impl FromStr for RenyiOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(RenyiOrder::MIN_ENTROPY),
            _ => t
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("not an order: {s:?}")))
                .and_then(RenyiOrder::new),
        }
    }
}

impl fmt::Display for RenyiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Shannon entropy, min-entropy and varentropy of one law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoSummary {
    pub shannon: f64,
    pub min_entropy: f64,
    pub varentropy: f64,
}

/// `log Σ w_i^t` over the positive entries of an arbitrary non-negative
/// sequence, max-shifted.
pub fn log_power_sum_seq(w: &[f64], t: f64) -> f64 {
    let terms: Vec<f64> = w.iter().filter(|&&v| v > 0.0).map(|v| t * v.ln()).collect();
    log_sum_exp(&terms)
}

pub fn power_sum_seq(w: &[f64], t: f64) -> f64 {
    log_power_sum_seq(w, t).exp()
}

/// `log Σ x_i^t`; exactly `0` at `t = 1`.
pub fn log_power_sum(x: &LatticePmf, t: f64) -> f64 {
    if t == 1.0 {
        return 0.0;
    }
    log_power_sum_seq(x.weights(), t)
}

/// `S_t = Σ x_i^t`; exactly `1` at `t = 1`.
pub fn power_sum(x: &LatticePmf, t: f64) -> f64 {
    log_power_sum(x, t).exp()
}

pub fn shannon(x: &LatticePmf) -> f64 {
    -stable_sum(x.weights().iter().filter(|&&w| w > 0.0).map(|&w| w * w.ln()))
}

pub fn min_entropy(x: &LatticePmf) -> f64 {
    -x.max_mass().ln()
}

/// `H_p(x)`; `p = 0` is the `p -> 0+` limit `log #support`.
pub fn renyi(x: &LatticePmf, p: RenyiOrder) -> f64 {
    let p = p.value();
    if p == 0.0 {
        return (x.support_size() as f64).ln();
    }
    if p == 1.0 {
        return shannon(x);
    }
    if p.is_infinite() {
        return min_entropy(x);
    }
    let dp = p - 1.0;
    if dp.abs() < 0.5 {
        // log Σ x_i x_i^(p-1) = log1p(Σ x_i expm1((p-1) log x_i)), which
        // stays accurate as p -> 1.
        let s = stable_sum(
            x.weights()
                .iter()
                .filter(|&&w| w > 0.0)
                .map(|&w| w * (dp * w.ln()).exp_m1()),
        );
        return s.ln_1p() / (1.0 - p);
    }
    log_power_sum(x, p) / (1.0 - p)
}

/// `V(X) = E(log f(X) - E log f(X))^2`, as a two-pass sum.
pub fn varentropy(x: &LatticePmf) -> f64 {
    varentropy_seq(x.weights())
}

/// Varentropy of a sequence assumed to sum to one.
pub(crate) fn varentropy_seq(w: &[f64]) -> f64 {
    let h = -stable_sum(w.iter().filter(|&&v| v > 0.0).map(|&v| v * v.ln()));
    stable_sum(w.iter().filter(|&&v| v > 0.0).map(|&v| {
        let d = -v.ln() - h;
        v * d * d
    }))
}

pub fn info_summary(x: &LatticePmf) -> InfoSummary {
    InfoSummary {
        shannon: shannon(x),
        min_entropy: min_entropy(x),
        varentropy: varentropy(x),
    }
}

/// Law proportional to `x_i^α`, normalized in the log domain.
pub fn tilt(x: &LatticePmf, alpha: f64) -> Result<LatticePmf> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("tilt exponent must be positive, got {alpha}")));
    }
    if alpha == 1.0 {
        return Ok(x.clone());
    }
    let logs: Vec<f64> = x
        .weights()
        .iter()
        .map(|&w| if w > 0.0 { alpha * w.ln() } else { f64::NEG_INFINITY })
        .collect();
    let log_z = log_sum_exp(&logs);
    let weights: Vec<f64> = logs.iter().map(|&l| (l - log_z).exp()).collect();
    normalize(&weights, x.offset())
}

/// Information content `-log x_i`.
pub fn info_content(x: &LatticePmf, i: i64) -> Result<f64> {
    let w = x.pmf(i);
    if w > 0.0 {
        Ok(-w.ln())
    } else {
        Err(Error::OutOfSupport(i))
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda < 1.0 {
        Ok(())
    } else {
        Err(Error::BadLambda(lambda))
    }
}

/// `log(1 - λ^p)` without cancellation near `λ -> 1`.
fn ln_one_minus_pow(lambda: f64, p: f64) -> f64 {
    (-(p * lambda.ln()).exp_m1()).ln()
}

/// `log Σ_n ((1-λ)λ^n)^t = t log(1-λ) - log(1-λ^t)`.
pub fn log_power_sum_geometric(lambda: f64, t: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(t * (-lambda).ln_1p() - ln_one_minus_pow(lambda, t))
}

/// `log Σ_n (((1-λ)/(1+λ)) λ^|n|)^t`.
pub fn log_power_sum_symmetric_geometric(lambda: f64, t: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let log_c = (-lambda).ln_1p() - lambda.ln_1p();
    Ok(t * log_c + (t * lambda.ln()).exp().ln_1p() - ln_one_minus_pow(lambda, t))
}

/// Closed-form `H_p` of the geometric law `(1-λ)λ^n`.
pub fn renyi_geometric(lambda: f64, p: RenyiOrder) -> Result<f64> {
    check_lambda(lambda)?;
    let p = p.value();
    let h_inf = -(-lambda).ln_1p();
    Ok(if p == 0.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        h_inf
    } else if p == 1.0 {
        h_inf - lambda / (1.0 - lambda) * lambda.ln()
    } else {
        log_power_sum_geometric(lambda, p)? / (1.0 - p)
    })
}

/// Closed-form `H_p` of the symmetric geometric law.
pub fn renyi_symmetric_geometric(lambda: f64, p: RenyiOrder) -> Result<f64> {
    check_lambda(lambda)?;
    let p = p.value();
    let h_inf = lambda.ln_1p() - (-lambda).ln_1p();
    Ok(if p == 0.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        h_inf
    } else if p == 1.0 {
        // E|Z| = 2λ / ((1-λ)(1+λ))
        h_inf - lambda.ln() * 2.0 * lambda / ((1.0 - lambda) * (1.0 + lambda))
    } else {
        log_power_sum_symmetric_geometric(lambda, p)? / (1.0 - p)
    })
}

/// Varentropy of the geometric law: `log²λ · Var(N) = λ log²λ / (1-λ)²`.
pub fn varentropy_geometric(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let l = lambda.ln();
    Ok(lambda * l * l / ((1.0 - lambda) * (1.0 - lambda)))
}

/// Varentropy of the symmetric geometric law:
/// `log²λ · (E|Z|² - (E|Z|)²)` with `E|Z|² = 2λ/(1-λ)²` and
/// `E|Z| = 2λ/((1-λ)(1+λ))`.
pub fn varentropy_symmetric_geometric(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let l = lambda.ln();
    let om = 1.0 - lambda;
    let second = 2.0 * lambda / (om * om);
    let first = 2.0 * lambda / (om * (1.0 + lambda));
    Ok(l * l * (second - first * first))
}

/// Closed-form `H_p` of either parametric family.
pub fn renyi_law(law: &ParametricLaw, p: RenyiOrder) -> f64 {
    match law.kind() {
        LawKind::Geometric => renyi_geometric(law.lambda(), p),
        LawKind::SymmetricGeometric => renyi_symmetric_geometric(law.lambda(), p),
    }
    .expect("ParametricLaw holds a valid lambda")
}

pub fn varentropy_law(law: &ParametricLaw) -> f64 {
    match law.kind() {
        LawKind::Geometric => varentropy_geometric(law.lambda()),
        LawKind::SymmetricGeometric => varentropy_symmetric_geometric(law.lambda()),
    }
    .expect("ParametricLaw holds a valid lambda")
}

pub fn log_power_sum_law(law: &ParametricLaw, t: f64) -> f64 {
    match law.kind() {
        LawKind::Geometric => log_power_sum_geometric(law.lambda(), t),
        LawKind::SymmetricGeometric => log_power_sum_symmetric_geometric(law.lambda(), t),
    }
    .expect("ParametricLaw holds a valid lambda")
}

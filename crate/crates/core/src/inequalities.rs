//! Evaluators for the inequalities implied by concavity of `Φ`, and the
//! extremal constants that appear in them.
//!
//! | check | inequality |
//! |---|---|
//! | [`check_renyi_gap`] | `H_p - H_q >= log c(p) - log c(q)`, `p > q`, `c(α) = α^(1/(α-1))` |
//! | [`check_varentropy`] | `V < 1` (monotone), `V <= V_S` (symmetric) |
//! | [`mean_mode_check`] | `e · max(f(⌊EX⌋), f(⌈EX⌉)) >= ‖f‖_∞` |
//! | [`concentration_bound`] | `P(±(I - H) >= t) <= exp(-K r(±t/K))` |
//! | [`epi_reversal_check`] | `H_α(X - Y) <= H_α(X) + log 2`, `α >= 2` |
//! | [`h2_hinf_identity_check`] | `H_2(X) = H_∞(X - Y)` |

use std::f64::consts::{E, LN_2};
use std::sync::OnceLock;

use serde::Serialize;

use crate::entropy::{
    log_power_sum, renyi, renyi_geometric, renyi_symmetric_geometric, shannon, tilt, varentropy,
    varentropy_geometric, varentropy_symmetric_geometric, RenyiOrder,
};
use crate::error::{Error, Result};
use crate::lattice::{difference, LatticePmf};
use crate::report::{CheckReport, Verdict};
use crate::scalar::{golden_section_max, log_grid, stable_sum};

/// Slack on the Rényi gap and EPI margins.
pub const GAP_TOL: f64 = 1e-10;
/// Slack on the varentropy bounds.
pub const VARENTROPY_TOL: f64 = 1e-10;
/// Slack on `H_2(X) = H_∞(X - Y)`.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Means within this distance of an integer are treated as that integer.
pub const MEAN_SNAP: f64 = 1e-9;
/// Bracket width of the 1-D maximizations over `λ`.
pub const OPT_TOL: f64 = 1e-12;
const LAMBDA_LO: f64 = 1e-9;
const LAMBDA_HI: f64 = 1.0 - 1e-9;

/// `log c(α)`: `log α/(α-1)`, with `log c(1) = 1` and `log c(∞) = 0`.
pub fn log_c(alpha: RenyiOrder) -> f64 {
    let a = alpha.value();
    if a.is_infinite() {
        0.0
    } else if a == 0.0 {
        f64::INFINITY
    } else if a == 1.0 {
        1.0
    } else {
        (a - 1.0).ln_1p() / (a - 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapConstant {
    pub p: RenyiOrder,
    pub q: RenyiOrder,
    pub value: f64,
}

impl GapConstant {
    pub fn new(p: RenyiOrder, q: RenyiOrder) -> Self {
        Self { p, q, value: gap_constant(p, q) }
    }
}

/// `log(c(p)/c(q))`; negative for `p > q`.
pub fn gap_constant(p: RenyiOrder, q: RenyiOrder) -> f64 {
    if p == q {
        return 0.0;
    }
    log_c(p) - log_c(q)
}

fn check_gap_orders(p: RenyiOrder, q: RenyiOrder) -> Result<()> {
    if q.value() > 0.0 && p.value() > q.value() {
        Ok(())
    } else {
        Err(Error::BadOrders { q: q.value(), p: p.value(), reason: "need p > q > 0" })
    }
}

fn gap_report(hp: f64, hq: f64, p: RenyiOrder, q: RenyiOrder) -> CheckReport {
    let gap = gap_constant(p, q);
    let margin = hp - hq - gap;
    CheckReport::new("renyi_gap", hp - hq, gap, margin, Verdict::from_bool(margin > -GAP_TOL))
        .param("p", p)
        .param("q", q)
}

/// `H_p(x) - H_q(x)` against `gap_constant(p, q)` for monotone
/// log-concave `x` and `p > q > 0`.
pub fn check_renyi_gap(x: &LatticePmf, p: RenyiOrder, q: RenyiOrder) -> Result<CheckReport> {
    check_gap_orders(p, q)?;
    if !(x.is_log_concave() && x.monotonicity().is_monotone()) {
        return Err(Error::NotMonotoneLogConcave);
    }
    Ok(gap_report(renyi(x, p), renyi(x, q), p, q))
}

/// [`check_renyi_gap`] for the geometric law, from closed forms.
pub fn check_renyi_gap_geometric(lambda: f64, p: RenyiOrder, q: RenyiOrder) -> Result<CheckReport> {
    check_gap_orders(p, q)?;
    let r = gap_report(renyi_geometric(lambda, p)?, renyi_geometric(lambda, q)?, p, q);
    Ok(r.param("lambda", lambda))
}

/// `(λ*, V_S)`: the largest varentropy of a symmetric geometric law.
/// Computed once per process.
pub fn sup_varentropy_symmetric() -> (f64, f64) {
    static CACHE: OnceLock<(f64, f64)> = OnceLock::new();
    *CACHE.get_or_init(|| maximize_over_lambda(|l| varentropy_symmetric_geometric(l).unwrap_or(f64::NAN)))
}

/// Grid search in `logit λ` over `[1e-9, 1 - 1e-9]`, then golden section in
/// `λ` on the best grid cell down to [`OPT_TOL`].
fn maximize_over_lambda<F: Fn(f64) -> f64>(f: F) -> (f64, f64) {
    const GRID: usize = 801;
    let logit = |l: f64| (l / (1.0 - l)).ln();
    let expit = |y: f64| 1.0 / (1.0 + (-y).exp());
    let (y0, y1) = (logit(LAMBDA_LO), logit(LAMBDA_HI));
    let ys: Vec<f64> = (0..GRID).map(|i| y0 + (y1 - y0) * i as f64 / (GRID - 1) as f64).collect();
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (i, &y) in ys.iter().enumerate() {
        let v = f(expit(y));
        if v > best_val {
            best_val = v;
            best = i;
        }
    }
    let lo = if best == 0 { LAMBDA_LO } else { expit(ys[best - 1]) };
    let hi = if best == GRID - 1 { LAMBDA_HI } else { expit(ys[best + 1]) };
    golden_section_max(f, lo, hi, OPT_TOL)
}

/// Structural class deciding which varentropy bound applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarentropyClass {
    Monotone,
    HalfIntegerSymmetric,
    IntegerSymmetric,
}

pub fn varentropy_class(x: &LatticePmf) -> Result<VarentropyClass> {
    if !x.is_log_concave() {
        return Err(Error::NotLogConcave);
    }
    if x.monotonicity().is_monotone() {
        return Ok(VarentropyClass::Monotone);
    }
    match x.symmetry_center() {
        Some(c) if c.is_integer() => Ok(VarentropyClass::IntegerSymmetric),
        Some(_) => Ok(VarentropyClass::HalfIntegerSymmetric),
        None => Err(Error::Unclassified),
    }
}

/// `V(x)` against 1 (monotone or half-integer symmetric) or `V_S`
/// (integer symmetric). `margin = bound - V`.
pub fn check_varentropy(x: &LatticePmf) -> Result<CheckReport> {
    let class = varentropy_class(x)?;
    let bound = match class {
        VarentropyClass::IntegerSymmetric => sup_varentropy_symmetric().1,
        _ => 1.0,
    };
    let v = varentropy(x);
    let class_name = match class {
        VarentropyClass::Monotone => "monotone",
        VarentropyClass::HalfIntegerSymmetric => "half_integer_symmetric",
        VarentropyClass::IntegerSymmetric => "integer_symmetric",
    };
    Ok(CheckReport::with_margin("varentropy", v, bound, bound - v, VARENTROPY_TOL).param("class", class_name))
}

/// Both forms of the mean-versus-mode inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanMode {
    pub mean: f64,
    pub floor_mass: f64,
    pub ceil_mass: f64,
    pub max_mass: f64,
    /// `f(⌊EX⌋)^(1-θ) f(⌈EX⌉)^θ`, `θ` the fractional part of the mean.
    pub interpolated: f64,
    /// `e · max(f(⌊EX⌋), f(⌈EX⌉))` vs `‖f‖_∞`.
    pub headline: CheckReport,
    /// `e · f̃(EX)` vs `‖f‖_∞`.
    pub interpolated_check: CheckReport,
}

/// Mean-versus-mode for log-concave `x`; monotonicity is not needed.
/// Non-log-concave input yields two not-applicable reports.
pub fn mean_mode_check(x: &LatticePmf) -> MeanMode {
    let (mut mean, _) = x.mean_variance();
    if (mean - mean.round()).abs() < MEAN_SNAP {
        mean = mean.round();
    }
    let (fl, ce) = (mean.floor(), mean.ceil());
    let floor_mass = x.pmf(fl as i64);
    let ceil_mass = x.pmf(ce as i64);
    let theta = mean - fl;
    let interpolated = if theta == 0.0 {
        floor_mass
    } else {
        floor_mass.powf(1.0 - theta) * ceil_mass.powf(theta)
    };
    let max_mass = x.max_mass();
    let (headline, interpolated_check) = if x.is_log_concave() {
        let l1 = E * floor_mass.max(ceil_mass);
        let l2 = E * interpolated;
        (
            CheckReport::with_margin("mean_mode", l1, max_mass, l1 - max_mass, 0.0).param("mean", mean),
            CheckReport::with_margin("mean_mode_interpolated", l2, max_mass, l2 - max_mass, 0.0).param("mean", mean),
        )
    } else {
        (
            CheckReport::not_applicable("mean_mode", "not log-concave"),
            CheckReport::not_applicable("mean_mode_interpolated", "not log-concave"),
        )
    };
    MeanMode { mean, floor_mass, ceil_mass, max_mass, interpolated, headline, interpolated_check }
}

/// `r(t) = t - log(1 + t)` for `t > -1`, `+∞` from `-1` down.
pub fn rate_r(t: f64) -> f64 {
    if t <= -1.0 {
        f64::INFINITY
    } else {
        t - t.ln_1p()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `P(I(X) >= H + t)`.
    Upper,
    /// `P(I(X) <= H - t)`.
    Lower,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailBound {
    pub side: Side,
    pub t: f64,
    pub k: f64,
    pub bound: f64,
}

impl TailBound {
    pub fn new(side: Side, t: f64, k: f64) -> Self {
        Self { side, t, k, bound: concentration_bound(t, k, side) }
    }
}

/// `exp(-K r(t/K))` (upper) or `exp(-K r(-t/K))` (lower).
pub fn concentration_bound(t: f64, k: f64, side: Side) -> f64 {
    let s = match side {
        Side::Upper => t / k,
        Side::Lower => -t / k,
    };
    let r = rate_r(s);
    if r.is_infinite() {
        0.0
    } else {
        (-k * r).exp()
    }
}

/// Exact `P(I(X) >= H + t)` or `P(I(X) <= H - t)` by enumeration.
pub fn empirical_tail(x: &LatticePmf, t: f64, side: Side) -> f64 {
    let h = shannon(x);
    stable_sum(x.weights().iter().filter(|&&w| w > 0.0).filter_map(|&w| {
        let info = -w.ln();
        let hit = match side {
            Side::Upper => info >= h + t,
            Side::Lower => info <= h - t,
        };
        hit.then_some(w)
    }))
}

/// Empirical tail against the bound with constant `k`; `margin = bound - tail`.
pub fn concentration_check(x: &LatticePmf, t: f64, k: f64, side: Side) -> CheckReport {
    let tail = empirical_tail(x, t, side);
    let bound = concentration_bound(t, k, side);
    CheckReport::with_margin("concentration", tail, bound, bound - tail, 1e-12)
        .param("t", t)
        .param("K", k)
        .param("side", side.as_str())
}

/// Default α-grid of [`k_constant`]: 200 log-spaced points on `[1e-3, 1e3]`.
pub fn default_alpha_grid() -> Vec<f64> {
    log_grid(1e-3, 1e3, 200)
}

/// `max_α V(X_α)` over the grid, a lower bound on `K = sup_α V(X_α)`.
/// Returns `(α at the maximum, value)`.
pub fn k_constant(x: &LatticePmf, alpha_grid: &[f64]) -> Result<(f64, f64)> {
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for &a in alpha_grid {
        let v = varentropy(&tilt(x, a)?);
        if v > best.1 {
            best = (a, v);
        }
    }
    Ok(best)
}

/// [`k_constant`] for the geometric law: its tilt by `α` is geometric
/// with ratio `λ^α`.
pub fn k_constant_geometric(lambda: f64, alpha_grid: &[f64]) -> Result<(f64, f64)> {
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for &a in alpha_grid {
        let v = varentropy_geometric(lambda.powf(a))?;
        if v > best.1 {
            best = (a, v);
        }
    }
    Ok(best)
}

/// `H_α(x) + log 2 - H_α(x ⊖ x)` for monotone log-concave `x` and
/// `α >= 2`; not applicable otherwise.
pub fn epi_reversal_check(x: &LatticePmf, alpha: RenyiOrder) -> CheckReport {
    if alpha.value() < 2.0 {
        return CheckReport::not_applicable("epi_reversal", "alpha < 2");
    }
    if !(x.is_log_concave() && x.monotonicity().is_monotone()) {
        return CheckReport::not_applicable("epi_reversal", "not monotone log-concave");
    }
    let hd = renyi(&difference(x, x), alpha);
    let hx = renyi(x, alpha);
    CheckReport::with_margin("epi_reversal", hd, hx + LN_2, hx + LN_2 - hd, GAP_TOL).param("alpha", alpha)
}

/// [`epi_reversal_check`] for the geometric law: the difference of two
/// independent geometric(λ) variables is symmetric geometric(λ).
pub fn epi_reversal_geometric(lambda: f64, alpha: RenyiOrder) -> Result<CheckReport> {
    if alpha.value() < 2.0 {
        return Err(Error::BadOrder(alpha.value()));
    }
    let hd = renyi_symmetric_geometric(lambda, alpha)?;
    let hx = renyi_geometric(lambda, alpha)?;
    Ok(CheckReport::with_margin("epi_reversal", hd, hx + LN_2, hx + LN_2 - hd, GAP_TOL)
        .param("alpha", alpha)
        .param("lambda", lambda))
}

/// `H_2(x) = H_∞(x ⊖ x)` with the mode of `x ⊖ x` at zero.
/// `margin = -|H_2(x) - H_∞(x ⊖ x)|`.
pub fn h2_hinf_identity_check(x: &LatticePmf) -> CheckReport {
    let d = difference(x, x);
    let h2 = -log_power_sum(x, 2.0);
    let hinf = -d.max_mass().ln();
    let gap = (h2 - hinf).abs();
    let mode_at_zero = d.pmf(0) >= d.max_mass() * (1.0 - 1e-12);
    CheckReport::new(
        "h2_hinf_identity",
        h2,
        hinf,
        -gap,
        Verdict::from_bool(gap <= IDENTITY_TOL && mode_at_zero),
    )
    .param("mode_at_zero", mode_at_zero)
}

/// Maximizer and value of `H_q(Z_λ) - H_p(Z_λ)` over symmetric geometric `Z_λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CConstant {
    pub q: f64,
    pub p: f64,
    pub lambda: f64,
    pub value: f64,
}

/// `C(q, p) = sup_λ H_q(Z_λ) - H_p(Z_λ)` for `p >= q > 0`.
pub fn c_constant(q: RenyiOrder, p: RenyiOrder) -> Result<CConstant> {
    if !(q.value() > 0.0 && p.value() >= q.value()) {
        return Err(Error::BadOrders { q: q.value(), p: p.value(), reason: "need p >= q > 0" });
    }
    if p == q {
        return Ok(CConstant { q: q.value(), p: p.value(), lambda: f64::NAN, value: 0.0 });
    }
    let diff = |l: f64| match (renyi_symmetric_geometric(l, q), renyi_symmetric_geometric(l, p)) {
        (Ok(a), Ok(b)) => a - b,
        _ => f64::NAN,
    };
    let (lambda, value) = maximize_over_lambda(diff);
    Ok(CConstant { q: q.value(), p: p.value(), lambda, value })
}

/// `H_q(x) - H_p(x) <= C(q, p)` for log-concave `x` symmetric about an
/// integer; not applicable otherwise.
pub fn check_c_bound(x: &LatticePmf, q: RenyiOrder, p: RenyiOrder) -> Result<CheckReport> {
    let c = c_constant(q, p)?;
    let symmetric = matches!(x.symmetry_center(), Some(s) if s.is_integer());
    if !(symmetric && x.is_log_concave()) {
        return Ok(CheckReport::not_applicable("c_bound", "not integer-symmetric log-concave"));
    }
    let d = renyi(x, q) - renyi(x, p);
    Ok(CheckReport::with_margin("c_bound", d, c.value, c.value - d, 1e-9)
        .param("q", q)
        .param("p", p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{materialize, normalize, ParametricLaw};

    fn pmf(w: &[f64]) -> LatticePmf {
        normalize(w, 0).unwrap()
    }

    fn o(p: f64) -> RenyiOrder {
        RenyiOrder::new(p).unwrap()
    }

    #[test]
    fn gap_constant_examples() {
        assert!((gap_constant(RenyiOrder::MIN_ENTROPY, o(1.0)) + 1.0).abs() < 1e-15);
        assert_eq!(gap_constant(o(2.0), o(2.0)), 0.0);
        assert!((gap_constant(o(2.0), o(1.0)) - (LN_2 - 1.0)).abs() < 1e-15);
        assert!(gap_constant(o(1.0 + 1e-6), o(1.0)).abs() < 1e-5);
        assert!((gap_constant(o(3.0), o(1.5)) + gap_constant(o(1.5), o(3.0))).abs() < 1e-16);
        assert!(gap_constant(o(1e9), RenyiOrder::MIN_ENTROPY).abs() < 1e-7);
    }

    #[test]
    fn renyi_gap_examples() {
        let r = check_renyi_gap_geometric(0.999, o(3.0), o(1.5)).unwrap();
        assert!(r.margin > 0.0 && r.margin < 0.01, "{r}");
        let p = o(3.0);
        let q = o(1.5);
        let r = check_renyi_gap(&LatticePmf::dirac(0), p, q).unwrap();
        assert!((r.margin + gap_constant(p, q)).abs() < 1e-15 && r.passed());
        let g = materialize(&ParametricLaw::geometric(0.3).unwrap(), 1e-15).unwrap();
        assert!(check_renyi_gap(&g, RenyiOrder::MIN_ENTROPY, o(1.0)).unwrap().passed());
        assert_eq!(check_renyi_gap(&pmf(&[0.2, 0.6, 0.2]), p, q), Err(Error::NotMonotoneLogConcave));
        assert!(matches!(check_renyi_gap(&g, q, p), Err(Error::BadOrders { .. })));
    }

    #[test]
    fn v_s_value() {
        let (l, v) = sup_varentropy_symmetric();
        assert!((v - 1.16923).abs() < 1e-3, "{v}");
        assert!((l - 0.2007).abs() < 1e-3, "{l}");
        for d in [-1e-3, 1e-3] {
            assert!(varentropy_symmetric_geometric(l + d).unwrap() <= v);
        }
    }

    #[test]
    fn varentropy_checks() {
        let g = materialize(&ParametricLaw::geometric(0.99).unwrap(), 1e-15).unwrap();
        let r = check_varentropy(&g).unwrap();
        assert!(r.passed() && r.margin < 1e-3, "{r}");
        let r = check_varentropy(&LatticePmf::uniform(0, 10)).unwrap();
        assert!(r.passed() && (r.margin - 1.0).abs() < 1e-14);
        let (l, vs) = sup_varentropy_symmetric();
        let s = materialize(&ParametricLaw::symmetric_geometric(l).unwrap(), 1e-15).unwrap();
        let r = check_varentropy(&s).unwrap();
        assert_eq!(r.rhs, vs);
        assert!(r.passed() && r.margin < 1e-6, "{r}");
        assert_eq!(check_varentropy(&pmf(&[0.2, 0.5, 0.3])), Err(Error::Unclassified));
        assert_eq!(check_varentropy(&pmf(&[0.4, 0.1, 0.5])), Err(Error::NotLogConcave));
        let half = pmf(&[0.1, 0.4, 0.4, 0.1]);
        assert_eq!(check_varentropy(&half).unwrap().rhs, 1.0);
    }

    #[test]
    fn mean_mode_examples() {
        let g = materialize(&ParametricLaw::geometric(0.5).unwrap(), 1e-15).unwrap();
        let m = mean_mode_check(&g);
        assert_eq!(m.mean, 1.0);
        assert!((m.floor_mass - 0.25).abs() < 1e-15);
        assert!((m.headline.lhs - E / 4.0).abs() < 1e-15);
        assert!(m.headline.passed() && m.interpolated_check.passed());
        let m = mean_mode_check(&LatticePmf::dirac(3));
        assert!((m.headline.margin - (E - 1.0)).abs() < 1e-15);
        let lam = 20.0 / 21.0;
        let g = materialize(&ParametricLaw::geometric(lam).unwrap(), 1e-15).unwrap();
        let m = mean_mode_check(&g);
        assert_eq!(m.mean, 20.0);
        let ratio = m.headline.lhs / m.headline.rhs;
        assert!((1.0..1.05).contains(&ratio), "{ratio}");
        assert_eq!(mean_mode_check(&pmf(&[0.4, 0.1, 0.5])).headline.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn interpolated_is_stronger() {
        let x = pmf(&[0.1, 0.5, 0.3, 0.1]);
        let m = mean_mode_check(&x);
        assert!(m.interpolated <= m.floor_mass.max(m.ceil_mass));
        assert!(m.interpolated_check.passed());
    }

    #[test]
    fn rate_and_bounds() {
        assert_eq!(rate_r(0.0), 0.0);
        assert!((rate_r(1.0) - (1.0 - LN_2)).abs() < 1e-16);
        assert_eq!(rate_r(-2.0), f64::INFINITY);
        assert_eq!(rate_r(-1.0), f64::INFINITY);
        assert_eq!(concentration_bound(1.0, 1.0, Side::Lower), 0.0);
        assert_eq!(concentration_bound(0.0, 1.0, Side::Upper), 1.0);
        assert_eq!(concentration_bound(0.0, 1.0, Side::Lower), 1.0);
        for t in [0.1, 0.5, 0.9, 3.0] {
            assert!((concentration_bound(t, 1.0, Side::Upper) - (1.0 + t) * (-t).exp()).abs() < 1e-15);
            let lower = if t < 1.0 { (1.0 - t) * t.exp() } else { 0.0 };
            assert!((concentration_bound(t, 1.0, Side::Lower) - lower).abs() < 1e-15);
        }
        let vs = sup_varentropy_symmetric().1;
        let want = (1.0 + 2.0 / vs).powf(vs) * (-2.0f64).exp();
        assert!((concentration_bound(2.0, vs, Side::Upper) - want).abs() < 1e-15);
        assert_eq!(TailBound::new(Side::Lower, 2.0, 2.0).bound, 0.0);
    }

    #[test]
    fn empirical_tails() {
        let u = LatticePmf::uniform(3, 7);
        assert_eq!(empirical_tail(&u, 0.1, Side::Upper), 0.0);
        assert_eq!(empirical_tail(&u, 0.1, Side::Lower), 0.0);
        assert_eq!(empirical_tail(&LatticePmf::dirac(0), 0.5, Side::Upper), 0.0);
        let g = materialize(&ParametricLaw::geometric(0.9).unwrap(), 1e-15).unwrap();
        for t in [0.5, 1.0, 2.0] {
            for side in [Side::Upper, Side::Lower] {
                assert!(concentration_check(&g, t, 1.0, side).passed());
            }
        }
    }

    #[test]
    fn k_constant_examples() {
        let grid = default_alpha_grid();
        assert_eq!(grid.len(), 200);
        let (_, k) = k_constant(&LatticePmf::uniform(0, 5), &grid).unwrap();
        assert!(k.abs() < 1e-12);
        let (a, k) = k_constant_geometric(0.9, &grid).unwrap();
        assert_eq!(a, 1e-3);
        assert!(k > 0.99 && k < 1.0);
        let g = materialize(&ParametricLaw::geometric(0.99).unwrap(), 1e-15).unwrap();
        let (_, k) = k_constant(&g, &grid).unwrap();
        assert!(k > 0.95 && k < 1.0, "{k}");
    }

    #[test]
    fn epi_examples() {
        let r = epi_reversal_geometric(0.999, o(2.0)).unwrap();
        assert!(r.passed() && r.margin < 0.01);
        let direct = ((1.0 + 0.999f64).powi(2) / (1.0 + 0.999f64 * 0.999)).ln();
        assert!((r.lhs - (r.rhs - LN_2) - direct).abs() < 1e-12);
        let r = epi_reversal_check(&LatticePmf::dirac(0), o(2.0));
        assert!(r.passed() && (r.margin - LN_2).abs() < 1e-15);
        let x = pmf(&[0.6, 0.3, 0.1]);
        for a in [2.0, 3.0, f64::INFINITY] {
            assert!(epi_reversal_check(&x, o(a)).passed());
        }
        assert_eq!(epi_reversal_check(&x, o(1.5)).verdict, Verdict::NotApplicable);
        let g = materialize(&ParametricLaw::geometric(0.7).unwrap(), 1e-15).unwrap();
        let a = epi_reversal_check(&g, o(2.0));
        let b = epi_reversal_geometric(0.7, o(2.0)).unwrap();
        assert!((a.margin - b.margin).abs() < 1e-12);
    }

    #[test]
    fn identity_examples() {
        let r = h2_hinf_identity_check(&pmf(&[0.5, 0.5]));
        assert!(r.passed() && (r.lhs - LN_2).abs() < 1e-15);
        let r = h2_hinf_identity_check(&LatticePmf::dirac(2));
        assert!(r.passed() && r.lhs == 0.0 && r.rhs == 0.0);
        assert!(h2_hinf_identity_check(&pmf(&[0.4, 0.0, 0.1, 0.5])).passed());
    }

    #[test]
    fn c_constant_examples() {
        assert_eq!(c_constant(o(2.0), o(2.0)).unwrap().value, 0.0);
        let c = c_constant(o(1.0), RenyiOrder::MIN_ENTROPY).unwrap();
        assert!(c.value > 0.0 && c.value <= 1.0 + 1e-9, "{c:?}");
        let c = c_constant(o(1.0), o(2.0)).unwrap();
        let at_half = renyi_symmetric_geometric(0.5, o(1.0)).unwrap() - renyi_symmetric_geometric(0.5, o(2.0)).unwrap();
        assert!(c.value >= at_half);
        assert!((c.value - 0.3554).abs() < 1e-3, "{c:?}");
        assert!(matches!(c_constant(o(2.0), o(1.0)), Err(Error::BadOrders { .. })));
        let s = normalize(&[0.1, 0.2, 0.4, 0.2, 0.1], -2).unwrap();
        assert!(check_c_bound(&s, o(1.0), RenyiOrder::MIN_ENTROPY).unwrap().passed());
    }
}

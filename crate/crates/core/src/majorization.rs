//! Level counts, the two-crossing structure against geometric comparators,
//! and convex-order checks between step densities.
//!
//! The level count `F_x(t) = #{i : x_i > t}` of a probability sequence is
//! itself a probability density on `(0, ∞)`. Everything here integrates
//! against such step functions (or their power transforms) segment by
//! segment in closed form; there is no quadrature.

use crate::entropy::power_sum;
use crate::error::{Error, Result};
use crate::lattice::{monotonicity, LatticePmf, SymmetryCenter, DEFAULT_TAIL_TOL};
use crate::report::{CheckReport, Num, Verdict};
use crate::scalar::stable_sum;

/// Relative tolerance of [`cake_layer_check`].
pub const CAKE_TOL: f64 = 1e-12;

/// Slack of [`convex_order_check`] on means and on each hinge.
pub const HINGE_TOL: f64 = 1e-10;
/// Relative distance below which an atom of `x` and a comparator term are
/// treated as tied; matches the relative residual of the matching solver.
pub const TIE_TOL: f64 = 1e-12;

/// Right-continuous step function `F(t) = #{i : x_i > t}`.
///
/// `counts[j]` is the value on `[breakpoints[j-1], breakpoints[j])` (with
/// `breakpoints[-1] = 0`); the function is zero from the last breakpoint on.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelCount {
    breakpoints: Vec<f64>,
    counts: Vec<usize>,
}

impl LevelCount {
    /// Level count of the positive entries of `values`.
    pub fn from_values(values: impl IntoIterator<Item = f64>) -> Self {
        let mut v: Vec<f64> = values.into_iter().filter(|&w| w > 0.0).collect();
        v.sort_by(f64::total_cmp);
        let n = v.len();
        let mut breakpoints = Vec::new();
        let mut counts = Vec::new();
        let mut i = 0;
        while i < n {
            // values >= v[i] are exactly those > every smaller breakpoint
            breakpoints.push(v[i]);
            counts.push(n - i);
            while i < n && v[i] == breakpoints[breakpoints.len() - 1] {
                i += 1;
            }
        }
        Self { breakpoints, counts }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn eval(&self, t: f64) -> usize {
        let j = self.breakpoints.partition_point(|&b| b <= t);
        self.counts.get(j).copied().unwrap_or(0)
    }

    /// `(lo, hi, count)` for every level interval with a non-zero count.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, usize)> + '_ {
        self.breakpoints
            .iter()
            .enumerate()
            .map(move |(j, &hi)| (if j == 0 { 0.0 } else { self.breakpoints[j - 1] }, hi, self.counts[j]))
    }

    /// `∫_0^∞ F`, which equals the total mass of the underlying sequence.
    pub fn mass(&self) -> f64 {
        stable_sum(self.segments().map(|(lo, hi, c)| c as f64 * (hi - lo)))
    }

    /// `t ∫_0^∞ u^(t-1) F(u) du`, computed per segment.
    pub fn cake_integral(&self, t: f64) -> f64 {
        stable_sum(self.segments().map(|(lo, hi, c)| c as f64 * (hi.powf(t) - lo.powf(t))))
    }

    /// View as a density with exponent 1.
    pub fn density(&self) -> PowerDensity {
        PowerDensity { base: self.clone(), exponent: 1.0 }
    }
}

/// `F_x` of a pmf.
pub fn level_count(x: &LatticePmf) -> LevelCount {
    LevelCount::from_values(x.weights().iter().copied())
}

/// Half-open `[lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t < self.hi
    }
}

/// `z_k = C λ^k` for `k >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricComparator {
    pub scale: f64,
    pub ratio: f64,
}

impl GeometricComparator {
    pub fn new(scale: f64, ratio: f64) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::BadLambda(ratio));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidParameter(format!("comparator scale must be positive, got {scale}")));
        }
        Ok(Self { scale, ratio })
    }

    /// The probability law `(1-λ) λ^k`.
    pub fn geometric(lambda: f64) -> Result<Self> {
        Self::new(1.0 - lambda, lambda)
    }

    pub fn value(&self, k: u64) -> f64 {
        self.scale * self.ratio.powf(k as f64)
    }

    /// `#{k >= 0 : C λ^k > t}`, exact.
    pub fn count_above(&self, t: f64) -> u64 {
        if t >= self.scale {
            return 0;
        }
        if t <= 0.0 {
            return u64::MAX;
        }
        let guess = ((t / self.scale).ln() / self.ratio.ln()).ceil().max(0.0) as u64;
        // fix up the rounding of the logarithms
        let mut m = guess;
        while m > 0 && self.value(m - 1) <= t {
            m -= 1;
        }
        while self.value(m) > t {
            m += 1;
        }
        m
    }

    /// Level count of the terms `z_k >= tail_tol`.
    pub fn level_count(&self, tail_tol: f64) -> LevelCount {
        LevelCount::from_values(self.values(tail_tol))
    }

    /// Terms `z_0, z_1, ..` down to the first one below `floor`.
    pub fn values(&self, floor: f64) -> Vec<f64> {
        let mut out = Vec::new();
        let mut k = 0;
        loop {
            let v = self.value(k);
            if v < floor || out.len() > 1_000_000 {
                break;
            }
            out.push(v);
            k += 1;
        }
        out
    }
}

/// `a = min{k : x_k >= z_k}`, `b = max{k : x_k >= z_k}` and `I = [z_b, x_a)`.
///
/// Indices are relative to the first atom of `x`. `unbounded` marks the
/// case where the set reaches the truncation horizon of `x`, i.e. the
/// comparator beyond `b` is below [`DEFAULT_TAIL_TOL`]; then `I` starts
/// at `z_(b+1)` instead of `z_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingInterval {
    pub a: u64,
    pub b: u64,
    pub interval: Interval,
    pub unbounded: bool,
}

pub fn crossing_interval(x: &LatticePmf, z: &GeometricComparator) -> Result<CrossingInterval> {
    if !monotonicity(x).is_decreasing() {
        return Err(Error::NotDecreasing);
    }
    let w = x.weights();
    let above: Vec<u64> = (0..w.len() as u64).filter(|&k| w[k as usize] >= z.value(k) * (1.0 - TIE_TOL)).collect();
    let (a, b) = match (above.first(), above.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::NoCrossing),
    };
    let unbounded = b + 1 == w.len() as u64 && z.value(b + 1) < DEFAULT_TAIL_TOL;
    // b = ∞ up to truncation: the first discarded comparator term stands in
    // for lim z_b = 0 (F_x and F_z agree on the extra sliver)
    let lo = if unbounded { z.value(b + 1) } else { z.value(b) };
    Ok(CrossingInterval {
        a,
        b,
        interval: Interval { lo, hi: w[a as usize] },
        unbounded,
    })
}

fn push_midpoints(points: &mut Vec<f64>) {
    points.retain(|t| t.is_finite() && *t > 0.0);
    points.sort_by(f64::total_cmp);
    points.dedup();
    let mids: Vec<f64> = points.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    points.extend(mids);
    points.sort_by(f64::total_cmp);
    points.dedup();
}

/// Samples the sign pattern `F_z <= F_x` on `I` and `F_z >= F_x` off `I`
/// at every breakpoint of both level counts, their midpoints, and
/// `n_samples` log-spaced extra points. `margin` is the smallest signed
/// count difference over the samples (non-negative iff the pattern holds).
/// Points where an atom of `x` and a comparator term both lie within
/// [`TIE_TOL`] are skipped and counted in the `tied` param.
pub fn crossing_verify(x: &LatticePmf, z: &GeometricComparator, n_samples: usize) -> Result<CheckReport> {
    let ci = match crossing_interval(x, z) {
        Ok(ci) => Some(ci),
        Err(Error::NoCrossing) => None,
        Err(e) => return Err(e),
    };
    let interval = ci.map(|c| c.interval).unwrap_or(Interval { lo: 0.0, hi: 0.0 });
    let fx = level_count(x);
    let min_x = fx.breakpoints()[0];
    let mut points: Vec<f64> = fx.breakpoints().to_vec();
    points.extend(z.values(min_x * 0.25));
    points.extend([interval.lo, interval.hi, 0.5 * interval.lo, min_x * 0.5]);
    if n_samples >= 2 {
        let (lo, hi) = ((min_x * 0.25).min(z.value(0)), x.max_mass().max(z.scale) * 1.5);
        points.extend(crate::scalar::log_grid(lo, hi, n_samples));
    }
    push_midpoints(&mut points);

    let mut margin = i64::MAX;
    let mut worst = f64::NAN;
    let mut tied = 0;
    for &t in &points {
        // an atom of x and a comparator term within TIE_TOL of t: the sign
        // of F_x - F_z here is below the resolution of the match
        let (below, above) = (t * (1.0 - TIE_TOL), t * (1.0 + TIE_TOL));
        if fx.eval(below) > fx.eval(above) && z.count_above(below) > z.count_above(above) {
            tied += 1;
            continue;
        }
        let f_x = fx.eval(t) as i64;
        let f_z = z.count_above(t).min(i64::MAX as u64 / 2) as i64;
        let d = if interval.contains(t) { f_x - f_z } else { f_z - f_x };
        if d < margin {
            margin = d;
            worst = t;
        }
    }
    if margin == i64::MAX {
        margin = 0;
    }
    let mut r = CheckReport::new(
        "crossing",
        interval.lo,
        interval.hi,
        margin as f64,
        Verdict::from_bool(margin >= 0),
    )
    .param("points", points.len() - tied)
    .param("tied", tied)
    .param("worst_t", Num(worst));
    r = match ci {
        Some(c) => r
            .param("a", c.a)
            .param("b", if c.unbounded { "inf".to_string() } else { c.b.to_string() }),
        None => r.param("a", "none").param("b", "none"),
    };
    Ok(r)
}

/// Level counts of a symmetric pmf and of its restriction to the
/// non-negative half, re-centered at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricFold {
    pub full: LevelCount,
    pub half: LevelCount,
    /// Mass of the central atom.
    pub center_mass: f64,
    /// Checks `F_x(t) = 2 F_{x*}(t) - 1` for breakpoints and midpoints
    /// below the central mass.
    pub report: CheckReport,
}

pub fn fold_symmetric(x: &LatticePmf) -> Result<SymmetricFold> {
    let center = match x.symmetry_center() {
        Some(c) if c.is_integer() => c,
        _ => return Err(Error::NotSymmetric),
    };
    let c = center_index(center);
    let w = x.weights();
    let mid = (c - x.offset()) as usize;
    let center_mass = w[mid];
    let full = level_count(x);
    let half = LevelCount::from_values(w[mid..].iter().copied());

    let mut points: Vec<f64> = full.breakpoints().iter().copied().filter(|&t| t < center_mass).collect();
    points.push(0.5 * full.breakpoints()[0]);
    push_midpoints(&mut points);
    points.retain(|&t| t < center_mass);
    let worst = points
        .iter()
        .map(|&t| (full.eval(t) as i64 - (2 * half.eval(t) as i64 - 1)).abs())
        .max()
        .unwrap_or(0);
    let report = CheckReport::new("fold_symmetric", 0.0, 0.0, -(worst as f64), Verdict::from_bool(worst == 0))
        .param("center", center)
        .param("points", points.len());
    Ok(SymmetricFold { full, half, center_mass, report })
}

fn center_index(c: SymmetryCenter) -> i64 {
    c.doubled() / 2
}

/// Layer-cake identity `Σ x_i^t = t ∫ u^(t-1) F_x(u) du`. `margin` is
/// `|lhs - rhs|`; the check passes when it is below `1e-12·max(1, lhs)`.
pub fn cake_layer_check(x: &LatticePmf, t: f64) -> CheckReport {
    let lhs = power_sum(x, t);
    let rhs = level_count(x).cake_integral(t);
    let gap = (lhs - rhs).abs();
    CheckReport::new("cake_layer", lhs, rhs, gap, Verdict::from_bool(gap < CAKE_TOL * lhs.max(1.0))).param("t", t)
}

/// Law of `U^r` where `U` has the step density of `base`.
///
/// Each level segment `[lo, hi)` with count `c` becomes the segment
/// `[lo^r, hi^r)` with density `c · w^(1/r - 1) / r`, but all
/// expectations are computed back in the `u` variable.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerDensity {
    base: LevelCount,
    exponent: f64,
}

impl PowerDensity {
    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn base(&self) -> &LevelCount {
        &self.base
    }

    /// Law of `W^q` for `W` distributed as `self`.
    pub fn power(&self, q: f64) -> PowerDensity {
        assert!(q > 0.0, "power transform needs a positive exponent");
        PowerDensity { base: self.base.clone(), exponent: self.exponent * q }
    }

    /// Endpoints of the transformed segments.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.base.breakpoints().iter().map(|b| b.powf(self.exponent)).collect()
    }

    pub fn mass(&self) -> f64 {
        self.base.mass()
    }

    /// `E W = Σ c (hi^(r+1) - lo^(r+1)) / (r+1)`.
    pub fn mean(&self) -> f64 {
        let r1 = self.exponent + 1.0;
        stable_sum(self.base.segments().map(|(lo, hi, c)| c as f64 * (hi.powf(r1) - lo.powf(r1)) / r1))
    }

    /// `E[W - t]_+`.
    pub fn hinge(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.mean() - t * self.mass();
        }
        let r = self.exponent;
        let r1 = r + 1.0;
        let s = t.powf(1.0 / r);
        stable_sum(self.base.segments().filter(|&(_, hi, _)| hi > s).map(|(lo, hi, c)| {
            let l = lo.max(s);
            c as f64 * ((hi.powf(r1) - l.powf(r1)) / r1 - t * (hi - l))
        }))
    }
}

/// Suffix sums over the segments of a [`PowerDensity`], so that each hinge
/// value costs one binary search instead of a pass over all segments.
struct HingeTable<'a> {
    d: &'a PowerDensity,
    /// `Σ_{k >= j} c_k (hi_k^(r+1) - lo_k^(r+1)) / (r+1)`.
    moment: Vec<f64>,
    /// `Σ_{k >= j} c_k (hi_k - lo_k)`.
    mass: Vec<f64>,
}

impl<'a> HingeTable<'a> {
    fn new(d: &'a PowerDensity) -> Self {
        let r1 = d.exponent + 1.0;
        let segs: Vec<(f64, f64, usize)> = d.base.segments().collect();
        let n = segs.len();
        let (mut moment, mut mass) = (vec![0.0; n + 1], vec![0.0; n + 1]);
        for k in (0..n).rev() {
            let (lo, hi, c) = segs[k];
            moment[k] = moment[k + 1] + c as f64 * (hi.powf(r1) - lo.powf(r1)) / r1;
            mass[k] = mass[k + 1] + c as f64 * (hi - lo);
        }
        Self { d, moment, mass }
    }

    fn hinge(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.moment[0] - t * self.mass[0];
        }
        let r = self.d.exponent;
        let r1 = r + 1.0;
        let s = t.powf(1.0 / r);
        let bp = self.d.base.breakpoints();
        let j = bp.partition_point(|&hi| hi <= s);
        if j == bp.len() {
            return 0.0;
        }
        let (lo, hi, c) = (if j == 0 { 0.0 } else { bp[j - 1] }, bp[j], self.d.base.counts()[j]);
        let l = lo.max(s);
        let partial = c as f64 * ((hi.powf(r1) - l.powf(r1)) / r1 - t * (hi - l));
        partial + (self.moment[j + 1] - t * self.mass[j + 1]).max(0.0)
    }
}

/// Density of `U^p` for `U` with step density `d`.
pub fn power_transform_density(d: &LevelCount, p: f64) -> PowerDensity {
    d.density().power(p)
}

/// Breakpoints of both densities, midpoints of consecutive points, and 0.
pub fn default_hinge_grid(u: &PowerDensity, v: &PowerDensity) -> Vec<f64> {
    let mut g = u.breakpoints();
    g.extend(v.breakpoints());
    push_midpoints(&mut g);
    g.insert(0, 0.0);
    g
}

/// Hinge-function test of `V ≻ U` in convex order: with equal means,
/// passes iff `E[V - t]_+ >= E[U - t]_+ - 1e-10` at every grid point.
/// `lhs`/`rhs` are the hinge values at the worst point.
pub fn convex_order_check(u: &PowerDensity, v: &PowerDensity, hinge_grid: &[f64]) -> Result<CheckReport> {
    for m in [u.mass(), v.mass()] {
        if (m - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized { mass: m });
        }
    }
    let (u_mean, v_mean) = (u.mean(), v.mean());
    if (u_mean - v_mean).abs() > HINGE_TOL * u_mean.abs().max(1.0) {
        return Err(Error::MeanMismatch { u_mean, v_mean });
    }
    let (tu, tv) = (HingeTable::new(u), HingeTable::new(v));
    let mut worst = (f64::INFINITY, f64::NAN, f64::NAN, f64::NAN);
    for &t in hinge_grid {
        let (hu, hv) = (tu.hinge(t), tv.hinge(t));
        if hv - hu < worst.0 {
            worst = (hv - hu, t, hv, hu);
        }
    }
    let (margin, t, hv, hu) = worst;
    Ok(CheckReport::with_margin("convex_order", hv, hu, margin, HINGE_TOL)
        .param("worst_t", Num(t))
        .param("points", hinge_grid.len()))
}

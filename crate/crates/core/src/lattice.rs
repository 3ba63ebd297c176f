//! Distributions on the integer lattice.
//!
//! [`LatticePmf`] is a finite-support probability sequence `x_i = P(X = i)`
//! stored as an offset plus a trimmed weight vector. [`ParametricLaw`]
//! carries the two infinite-support families (geometric and symmetric
//! geometric) whose functionals are available in closed form; they are
//! turned into a [`LatticePmf`] only on request, by [`materialize`].

use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::stable_sum;

/// Default discarded tail mass when materializing an infinite-support law.
pub const DEFAULT_TAIL_TOL: f64 = 1e-15;

/// Relative tolerance of the structural predicates.
pub const STRUCTURE_TOL: f64 = 1e-12;

/// Absolute tolerance of [`symmetry_center`].
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Sums closer to one than this are left untouched by [`normalize`], which
/// makes normalization idempotent bit for bit.
const UNIT_SUM_SLACK: f64 = 1e-14;

/// Probability mass function on a contiguous window of the integers.
///
/// Invariants: weights are finite and non-negative, the first and last
/// weights are positive, and the weights sum to one within `1e-12`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticePmf {
    offset: i64,
    weights: Vec<f64>,
}

impl LatticePmf {
    /// Same as [`normalize`].
    pub fn new(offset: i64, weights: Vec<f64>) -> Result<Self> {
        normalize(&weights, offset)
    }

    pub fn dirac(at: i64) -> Self {
        Self { offset: at, weights: vec![1.0] }
    }

    pub fn uniform(offset: i64, n: usize) -> Self {
        assert!(n > 0, "uniform law needs at least one atom");
        Self { offset, weights: vec![1.0 / n as f64; n] }
    }

    /// Builds from weights already known to be trimmed and normalized.
    pub(crate) fn from_parts_unchecked(offset: i64, weights: Vec<f64>) -> Self {
        debug_assert!(!weights.is_empty());
        Self { offset, weights }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Last index of the support window.
    pub fn last(&self) -> i64 {
        self.offset + self.weights.len() as i64 - 1
    }

    /// Mass at integer `i`; zero outside the window.
    pub fn pmf(&self, i: i64) -> f64 {
        if i < self.offset || i > self.last() {
            0.0
        } else {
            self.weights[(i - self.offset) as usize]
        }
    }

    /// `(index, mass)` pairs over the window.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .map(move |(k, &w)| (self.offset + k as i64, w))
    }

    /// Number of indices carrying positive mass.
    pub fn support_size(&self) -> usize {
        self.weights.iter().filter(|&&w| w > 0.0).count()
    }

    pub fn max_mass(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }

    pub fn is_dirac(&self) -> bool {
        self.support_size() == 1
    }

    /// Same masses re-indexed so the first atom sits at `offset`.
    pub fn shifted_to(&self, offset: i64) -> Self {
        Self { offset, weights: self.weights.clone() }
    }

    /// Mirror image `i -> -i`.
    pub fn reflected(&self) -> Self {
        let mut weights = self.weights.clone();
        weights.reverse();
        Self { offset: -self.last(), weights }
    }

    pub fn is_log_concave(&self) -> bool {
        is_log_concave(self)
    }

    pub fn monotonicity(&self) -> Direction {
        monotonicity(self)
    }

    pub fn symmetry_center(&self) -> Option<SymmetryCenter> {
        symmetry_center(self)
    }

    pub fn mean_variance(&self) -> (f64, f64) {
        mean_variance(self)
    }
}

impl fmt::Display for LatticePmf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "offset {} [", self.offset)?;
        for (k, w) in self.weights.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("]")
    }
}

/// Monotonicity class of a sequence on its support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
    /// Constant on its support (including a point mass).
    Both,
    Neither,
}

impl Direction {
    pub fn is_monotone(self) -> bool {
        self != Direction::Neither
    }

    pub fn is_decreasing(self) -> bool {
        matches!(self, Direction::Decreasing | Direction::Both)
    }

    pub fn is_increasing(self) -> bool {
        matches!(self, Direction::Increasing | Direction::Both)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
            Direction::Both => "both",
            Direction::Neither => "neither",
        }
    }
}

/// Point of symmetry, stored doubled so half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymmetryCenter {
    doubled: i64,
}

impl SymmetryCenter {
    pub fn from_doubled(doubled: i64) -> Self {
        Self { doubled }
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    pub fn value(self) -> f64 {
        self.doubled as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }
}

impl fmt::Display for SymmetryCenter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Infinite-support family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawKind {
    /// `(1 - λ) λ^n` for `n >= 0`.
    Geometric,
    /// `((1 - λ)/(1 + λ)) λ^|n|` for `n ∈ ℤ`.
    SymmetricGeometric,
}

impl LawKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LawKind::Geometric => "geometric",
            LawKind::SymmetricGeometric => "symmetric_geometric",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParametricLaw {
    kind: LawKind,
    lambda: f64,
}

impl ParametricLaw {
    pub fn new(kind: LawKind, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::BadLambda(lambda));
        }
        Ok(Self { kind, lambda })
    }

    pub fn geometric(lambda: f64) -> Result<Self> {
        Self::new(LawKind::Geometric, lambda)
    }

    pub fn symmetric_geometric(lambda: f64) -> Result<Self> {
        Self::new(LawKind::SymmetricGeometric, lambda)
    }

    pub fn kind(&self) -> LawKind {
        self.kind
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Normalizing constant in front of `λ^n` (resp. `λ^|n|`).
    pub fn scale(&self) -> f64 {
        match self.kind {
            LawKind::Geometric => 1.0 - self.lambda,
            LawKind::SymmetricGeometric => (1.0 - self.lambda) / (1.0 + self.lambda),
        }
    }

    pub fn pmf(&self, n: i64) -> f64 {
        match self.kind {
            LawKind::Geometric if n < 0 => 0.0,
            LawKind::Geometric => self.scale() * self.lambda.powf(n as f64),
            LawKind::SymmetricGeometric => self.scale() * self.lambda.powf(n.unsigned_abs() as f64),
        }
    }

    /// Mass discarded when keeping the indices `|n| <= horizon`.
    pub fn tail_mass(&self, horizon: u64) -> f64 {
        let lam_next = self.lambda.powf(horizon as f64 + 1.0);
        match self.kind {
            LawKind::Geometric => lam_next,
            LawKind::SymmetricGeometric => 2.0 * lam_next / (1.0 + self.lambda),
        }
    }

    pub fn mean(&self) -> f64 {
        match self.kind {
            LawKind::Geometric => self.lambda / (1.0 - self.lambda),
            LawKind::SymmetricGeometric => 0.0,
        }
    }
}

/// Divides by the total mass and trims zero weights at both ends.
pub fn normalize(weights: &[f64], offset: i64) -> Result<LatticePmf> {
    if weights.is_empty() {
        return Err(Error::Empty);
    }
    for (index, &value) in weights.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { index, value });
        }
        if value < 0.0 {
            return Err(Error::NegativeWeight { index, value });
        }
    }
    let first = weights.iter().position(|&w| w > 0.0).ok_or(Error::AllZero)?;
    let last = weights.iter().rposition(|&w| w > 0.0).expect("a positive weight exists");
    let kept = &weights[first..=last];
    let total = stable_sum(kept.iter().copied());
    let weights = if (total - 1.0).abs() <= UNIT_SUM_SLACK {
        kept.to_vec()
    } else {
        kept.iter().map(|&w| w / total).collect()
    };
    Ok(LatticePmf {
        offset: offset + first as i64,
        weights,
    })
}

/// Log-concavity of a raw non-negative sequence: contiguous support and
/// `2 log x_i >= log x_{i-1} + log x_{i+1}` up to [`STRUCTURE_TOL`]
/// relative slack.
pub fn is_log_concave_seq(x: &[f64]) -> bool {
    let first = match x.iter().position(|&w| w > 0.0) {
        Some(i) => i,
        None => return true,
    };
    let last = x.iter().rposition(|&w| w > 0.0).unwrap();
    let x = &x[first..=last];
    if x.iter().any(|&w| w <= 0.0) {
        return false;
    }
    let logs: Vec<f64> = x.iter().map(|w| w.ln()).collect();
    logs.windows(3).all(|w| {
        let lhs = 2.0 * w[1];
        let rhs = w[0] + w[2];
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        lhs - rhs >= -STRUCTURE_TOL * scale
    })
}

pub fn is_log_concave(x: &LatticePmf) -> bool {
    is_log_concave_seq(&x.weights)
}

/// Monotonicity of a raw sequence restricted to consecutive positive pairs.
pub fn monotonicity_seq(x: &[f64]) -> Direction {
    let mut inc = true;
    let mut dec = true;
    for w in x.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a > 0.0 && b > 0.0 {
            if b < a * (1.0 - STRUCTURE_TOL) {
                inc = false;
            }
            if b > a * (1.0 + STRUCTURE_TOL) {
                dec = false;
            }
        }
    }
    match (inc, dec) {
        (true, true) => Direction::Both,
        (true, false) => Direction::Increasing,
        (false, true) => Direction::Decreasing,
        (false, false) => Direction::Neither,
    }
}

pub fn monotonicity(x: &LatticePmf) -> Direction {
    monotonicity_seq(&x.weights)
}

/// Center `c` with `pmf(c + u) = pmf(c - u)` for all `u`, if one exists.
pub fn symmetry_center(x: &LatticePmf) -> Option<SymmetryCenter> {
    let n = x.weights.len();
    let symmetric = (0..n / 2).all(|k| (x.weights[k] - x.weights[n - 1 - k]).abs() <= SYMMETRY_TOL);
    symmetric.then(|| SymmetryCenter::from_doubled(2 * x.offset + n as i64 - 1))
}

/// Smallest window `|n| <= horizon` whose discarded mass is below `tail_tol`.
fn truncation_horizon(law: &ParametricLaw, tail_tol: f64) -> u64 {
    let lam = law.lambda();
    let extra = match law.kind() {
        LawKind::Geometric => 1.0,
        LawKind::SymmetricGeometric => 2.0 / (1.0 + lam),
    };
    // extra * λ^(h+1) < tol
    let guess = ((tail_tol / extra).ln() / lam.ln()).ceil() - 1.0;
    let mut h = if guess.is_finite() && guess > 0.0 { guess as u64 } else { 0 };
    while law.tail_mass(h) >= tail_tol {
        h += 1;
    }
    while h > 0 && law.tail_mass(h - 1) < tail_tol {
        h -= 1;
    }
    h
}

/// Truncates an infinite-support law so that the discarded mass is below
/// `tail_tol`, then renormalizes.
pub fn materialize(law: &ParametricLaw, tail_tol: f64) -> Result<LatticePmf> {
    if !(tail_tol > 0.0 && tail_tol <= 1e-6) {
        return Err(Error::BadTolerance(tail_tol));
    }
    let h = truncation_horizon(law, tail_tol) as i64;
    let (lo, hi) = match law.kind() {
        LawKind::Geometric => (0, h),
        LawKind::SymmetricGeometric => (-h, h),
    };
    let weights: Vec<f64> = (lo..=hi).map(|n| law.pmf(n)).collect();
    normalize(&weights, lo)
}

/// Exact `(E X, Var X)` by finite summation.
pub fn mean_variance(x: &LatticePmf) -> (f64, f64) {
    let mean = stable_sum(x.iter().map(|(i, w)| i as f64 * w));
    let var = stable_sum(x.iter().map(|(i, w)| {
        let d = i as f64 - mean;
        w * d * d
    }));
    (mean, var)
}

/// Law of `X - Y` for independent `X ~ x`, `Y ~ y`:
/// `result(n) = Σ_k x(n + k) y(k)`.
pub fn difference(x: &LatticePmf, y: &LatticePmf) -> LatticePmf {
    let (nx, ny) = (x.len(), y.len());
    let mut out = vec![0.0; nx + ny - 1];
    // index of n in `out` is n - (x.offset - y.last)
    for (i, &xi) in x.weights.iter().enumerate() {
        for (j, &yj) in y.weights.iter().enumerate() {
            out[i + (ny - 1 - j)] += xi * yj;
        }
    }
    let offset = x.offset - y.last();
    let first = out.iter().position(|&w| w > 0.0).unwrap_or(0);
    let last = out.iter().rposition(|&w| w > 0.0).unwrap_or(0);
    LatticePmf::from_parts_unchecked(offset + first as i64, out[first..=last].to_vec())
}

/// `count` draws by inverse-CDF sampling from a ChaCha stream seeded with
/// `seed`; identical arguments give identical output on every platform.
pub fn sample(x: &LatticePmf, seed: u64, count: usize) -> Vec<i64> {
    let mut cdf = Vec::with_capacity(x.len());
    let mut acc = 0.0;
    for &w in &x.weights {
        acc += w;
        cdf.push(acc);
    }
    let total = acc;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let u: f64 = rng.gen::<f64>() * total;
            let k = cdf.partition_point(|&c| c <= u).min(x.len() - 1);
            x.offset + k as i64
        })
        .collect()
}

/// Distribution input file: either explicit weights or a named law.
///
/// ```json
/// {"offset": -1, "weights": [0.2, 0.6, 0.2]}
/// {"law": "geometric", "lambda": 0.5}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DistributionFile {
    Weights { offset: i64, weights: Vec<f64> },
    Law { law: LawKind, lambda: f64 },
}

/// A loaded distribution: always a finite pmf, plus the exact law when the
/// input named one.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    pub pmf: LatticePmf,
    pub law: Option<ParametricLaw>,
}

impl DistributionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("bad distribution JSON: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn resolve(&self, tail_tol: f64) -> Result<Distribution> {
        match *self {
            DistributionFile::Weights { offset, ref weights } => Ok(Distribution {
                pmf: normalize(weights, offset)?,
                law: None,
            }),
            DistributionFile::Law { law, lambda } => {
                let law = ParametricLaw::new(law, lambda)?;
                Ok(Distribution {
                    pmf: materialize(&law, tail_tol)?,
                    law: Some(law),
                })
            }
        }
    }
}

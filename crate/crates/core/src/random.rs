//! Seeded generators of test distributions.
//!
//! Log-concavity is built in rather than filtered for: every generator
//! draws a concave sequence of log-weights and exponentiates it. The total
//! log-range is capped at [`MAX_LOG_RANGE`] nats so that no atom underflows
//! and the structural predicates stay well conditioned.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::{normalize, LatticePmf};

/// Largest `max log x_i - min log x_i` produced by the log-concave generators.
pub const MAX_LOG_RANGE: f64 = 50.0;

/// Deterministic generator used by the test suites and the CLI.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Non-decreasing positive slopes `d_1 <= d_2 <= ...`; the log-weights
/// `-(d_1 + ... + d_k)` are then concave and non-increasing.
fn convex_drops<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    if n < 2 {
        return Vec::new();
    }
    // A mix of regimes: nearly flat, nearly geometric, and sharply bending.
    let first = match rng.gen_range(0..4) {
        0 => 0.0,
        1 => rng.gen_range(0.0..0.05),
        _ => rng.gen_range(0.0..2.0),
    };
    let bend = match rng.gen_range(0..4) {
        0 => 0.0,
        1 => rng.gen_range(0.0..0.01),
        2 => rng.gen_range(0.0..0.2),
        _ => rng.gen_range(0.0..1.5),
    };
    let mut d = Vec::with_capacity(n - 1);
    let mut cur = first;
    for _ in 0..n - 1 {
        d.push(cur);
        cur += bend * rng.gen::<f64>();
    }
    d
}

fn cap_range(slopes: &mut [f64], range: f64) {
    if range > MAX_LOG_RANGE {
        let s = MAX_LOG_RANGE / range;
        slopes.iter_mut().for_each(|d| *d *= s);
    }
}

fn exp_weights(logs: &[f64]) -> Vec<f64> {
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    logs.iter().map(|l| (l - max).exp()).collect()
}

/// Non-increasing log-concave weights of length `n` (unnormalized, first = 1).
fn decreasing_weights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut drops = convex_drops(rng, n);
    let range: f64 = drops.iter().sum();
    cap_range(&mut drops, range);
    let mut logs = Vec::with_capacity(n);
    let mut acc = 0.0;
    logs.push(0.0);
    for d in drops {
        acc -= d;
        logs.push(acc);
    }
    exp_weights(&logs)
}

/// Non-increasing log-concave pmf on `{0, .., n-1}` with `n` uniform in
/// `1..=max_len`.
pub fn decreasing_log_concave<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> LatticePmf {
    let n = rng.gen_range(1..=max_len.max(1));
    normalize(&decreasing_weights(rng, n), 0).expect("positive weights")
}

/// Monotone log-concave pmf: non-increasing or non-decreasing with equal
/// odds, at a random offset in `-5..=5`.
pub fn monotone_log_concave<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> LatticePmf {
    let n = rng.gen_range(1..=max_len.max(1));
    let mut w = decreasing_weights(rng, n);
    if rng.gen_bool(0.5) {
        w.reverse();
    }
    let offset = rng.gen_range(-5..=5);
    normalize(&w, offset).expect("positive weights")
}

/// Log-concave pmf symmetric about `0` (integer center) or `-1/2`
/// (half-integer center), built by mirroring a non-increasing half of
/// length `1..=max_half`.
pub fn symmetric_log_concave<R: Rng + ?Sized>(rng: &mut R, max_half: usize, integer_center: bool) -> LatticePmf {
    let m = rng.gen_range(1..=max_half.max(1));
    let half = decreasing_weights(rng, m);
    let mut full: Vec<f64> = half.iter().rev().copied().collect();
    let skip = usize::from(integer_center);
    full.extend(half.iter().skip(skip));
    let offset = -(m as i64 - 1) - i64::from(!integer_center);
    normalize(&full, offset).expect("positive weights")
}

/// Log-concave pmf that is typically neither monotone nor symmetric.
pub fn log_concave<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> LatticePmf {
    let n = rng.gen_range(1..=max_len.max(1));
    if n == 1 {
        return LatticePmf::dirac(0);
    }
    let scale = match rng.gen_range(0..3) {
        0 => 0.1,
        1 => 1.0,
        _ => 4.0,
    };
    // non-increasing slopes give concave log-weights
    let mut slopes: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-scale..scale)).collect();
    slopes.sort_by(|a, b| b.total_cmp(a));
    let mut logs = Vec::with_capacity(n);
    let mut acc = 0.0;
    logs.push(0.0);
    for s in &slopes {
        acc += s;
        logs.push(acc);
    }
    let hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = logs.iter().copied().fold(f64::INFINITY, f64::min);
    if hi - lo > MAX_LOG_RANGE {
        let s = MAX_LOG_RANGE / (hi - lo);
        logs.iter_mut().for_each(|l| *l *= s);
    }
    let offset = rng.gen_range(-10..=10);
    normalize(&exp_weights(&logs), offset).expect("positive weights")
}

/// Arbitrary pmf: independent uniform weights with occasional interior
/// zeros and spikes, so neither log-concave nor monotone in general.
pub fn arbitrary<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> LatticePmf {
    let n = rng.gen_range(1..=max_len.max(1));
    let mut w: Vec<f64> = (0..n)
        .map(|_| match rng.gen_range(0..10) {
            0 => 0.0,
            1 => rng.gen_range(0.0..20.0),
            _ => rng.gen::<f64>(),
        })
        .collect();
    if w.iter().all(|&v| v == 0.0) {
        w[0] = 1.0;
    }
    let offset = rng.gen_range(-10..=10);
    normalize(&w, offset).expect("some positive weight")
}

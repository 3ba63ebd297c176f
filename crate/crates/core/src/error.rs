use thiserror::Error;

/// Errors raised by distribution construction, solvers and verifiers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("all weights are zero")]
    AllZero,

    #[error("empty weight list")]
    Empty,

    #[error("negative weight at index {index}: {value}")]
    NegativeWeight { index: usize, value: f64 },

    #[error("non-finite weight at index {index}: {value}")]
    NonFinite { index: usize, value: f64 },

    #[error("tail tolerance must lie in (0, 1e-6], got {0}")]
    BadTolerance(f64),

    #[error("lambda must lie in the open interval (0, 1), got {0}")]
    BadLambda(f64),

    #[error("invalid order {0}: orders must be non-negative and not NaN")]
    BadOrder(f64),

    #[error("invalid order pair (q = {q}, p = {p}): {reason}")]
    BadOrders { q: f64, p: f64, reason: &'static str },

    #[error("index {0} is outside the support")]
    OutOfSupport(i64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("input is a point mass; the comparator match needs a non-Dirac law")]
    DiracInput,

    #[error("no bracketing interval: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    NoBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("no index with x_k >= z_k; the comparator dominates everywhere")]
    NoCrossing,

    #[error("sequence is not symmetric about an integer point")]
    NotSymmetric,

    #[error("sequence is not monotone and log-concave")]
    NotMonotoneLogConcave,

    #[error("sequence is not log-concave")]
    NotLogConcave,

    #[error("sequence is not non-increasing on its support")]
    NotDecreasing,

    #[error("sequence is neither monotone nor symmetric; no varentropy bound applies")]
    Unclassified,

    #[error("densities have different means: {u_mean} vs {v_mean}")]
    MeanMismatch { u_mean: f64, v_mean: f64 },

    #[error("density mass {mass} differs from 1")]
    NotNormalized { mass: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = core::result::Result<T, Error>;

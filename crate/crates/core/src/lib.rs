//! Reversal of Lyapunov's inequality for monotone log-concave sequences on
//! the integers, and the information-theoretic bounds that follow from it.
//!
//! For a monotone log-concave probability sequence `x`, the function
//! `t ↦ log(t Σ x_i^t)` is concave on `(0, ∞)`. This crate evaluates that
//! functional and numerically verifies its consequences:
//!
//! - varentropy `V(X) < 1`, and `V(X) ≤ V_S ≈ 1.16923` for symmetric laws;
//! - Rényi comparisons `H_p > H_q + log(c(p)/c(q))` with `c(α) = α^(1/(α-1))`;
//! - concentration of the information content `-log x_X` around `H(X)`;
//! - the reverse entropy power bound `H_α(X - Y) ≤ H_α(X) + log 2`;
//! - the level-count majorization against a matched geometric law.
//!
//! Module map:
//!
//! | module | contents |
//! |---|---|
//! | [`lattice`] | [`LatticePmf`], parametric laws, structure predicates, `X - Y` |
//! | [`entropy`] | power sums, Rényi family, varentropy, tilts, closed forms |
//! | [`lyapunov`] | `Φ_x`, `Φ''`, concavity reports, counterexample |
//! | [`majorization`] | level counts, crossing intervals, layer cake, convex order |
//! | [`matching`] | geometric / symmetric-geometric comparators with matched `H_p` |
//! | [`inequalities`] | evaluators for every bound and the extremal constants |
//! | [`cli`] | command-line front end |

pub mod cli;
pub mod entropy;
pub mod error;
pub mod inequalities;
pub mod lattice;
pub mod lyapunov;
pub mod majorization;
pub mod matching;
#[cfg(test)]
mod properties;
pub mod random;
pub mod report;
pub mod scalar;

pub use entropy::RenyiOrder;
pub use error::{Error, Result};
pub use lattice::{Direction, LatticePmf, LawKind, ParametricLaw};
pub use report::{CheckReport, Verdict};

//! Command-line front end.
//!
//! Every command writes rows with the columns
//! `check_name, lhs, rhs, margin, verdict, params` as CSV (default) or a
//! JSON array. Pure measurements leave `rhs`, `margin` and `verdict` empty.
//! Exit status: 0 if no row failed, 1 if some inequality failed, 2 on a
//! usage or input error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::entropy::{renyi, renyi_law, varentropy, varentropy_law, RenyiOrder};
use crate::error::{Error, Result};
use crate::inequalities::{
    c_constant, check_c_bound, check_renyi_gap, check_varentropy, concentration_check, default_alpha_grid,
    empirical_tail, epi_reversal_check, epi_reversal_geometric, h2_hinf_identity_check, k_constant,
    mean_mode_check, sup_varentropy_symmetric, varentropy_class, Side, VarentropyClass,
};
use crate::lattice::{sample, DistributionFile, LatticePmf, LawKind, ParametricLaw, DEFAULT_TAIL_TOL};
use crate::lyapunov::{check_concavity_default, counterexample_check, phi, phi_second_derivative};
use crate::majorization::{
    cake_layer_check, convex_order_check, crossing_verify, default_hinge_grid, fold_symmetric, level_count,
    power_transform_density, GeometricComparator,
};
use crate::matching::{match_family, renyi_dominance_report_with, ComparatorFamily};
use crate::report::{fmt_num, CheckReport, Num, Verdict};

/// Default `t` values of the concentration report.
pub const DEFAULT_T_GRID: [f64; 6] = [0.1, 0.25, 0.5, 1.0, 2.0, 4.0];

const DEFAULT_Q_GRID: [f64; 6] = [0.5, 1.0, 1.5, 3.0, 5.0, f64::INFINITY];

#[derive(Debug, Parser)]
#[command(
    name = "lclc",
    version,
    about = "Verify concavity of log(t·Σx^t) and its entropy consequences on lattice distributions"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Where the distribution comes from.
#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// JSON file: {"offset": i, "weights": [..]} or {"law": "geometric", "lambda": x}.
    #[arg(long, conflicts_with = "law")]
    pub input: Option<PathBuf>,

    /// Named law instead of a file.
    #[arg(long, value_enum, requires = "lambda")]
    pub law: Option<LawArg>,

    #[arg(long)]
    pub lambda: Option<f64>,

    /// Tail mass discarded when materializing a named law.
    #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
    pub tail_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawArg {
    Geometric,
    SymmetricGeometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Monotone,
    Symmetric,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Auto,
    Geometric,
    SymmetricGeometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Constant {
    /// Supremum of the symmetric-geometric varentropy.
    Vs,
    /// C(q, p) over symmetric geometric laws.
    C,
    /// Grid lower bound of K = sup_α V(X_α) for the input.
    K,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every check whose hypotheses the input satisfies.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Matching order of the comparator checks.
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long = "t-grid", value_delimiter = ',')]
        t_grid: Option<Vec<f64>>,
    },
    /// Rényi entropies (nats).
    Entropy {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_delimiter = ',', default_value = "0,0.5,1,2,inf")]
        p: Vec<RenyiOrder>,
    },
    /// Varentropy and its bound.
    Varentropy {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Φ(t) = log(t·Σx^t), Φ''(t) and the concavity check.
    Phi {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long = "t-grid", value_delimiter = ',')]
        t_grid: Option<Vec<f64>>,
    },
    /// Level-count crossing, layer cake and convex order against the matched geometric law.
    Crossing {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Comparator with matched H_p, and the Rényi sign pattern.
    Match {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value_t = FamilyArg::Auto)]
        family: FamilyArg,
        #[arg(long = "q", value_delimiter = ',')]
        q: Option<Vec<RenyiOrder>>,
    },
    /// Exact information-content tails against exp(-K r(±t/K)).
    Concentration {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long = "t-grid", value_delimiter = ',')]
        t_grid: Option<Vec<f64>>,
        /// Override K (default: 1, or V_S for integer-symmetric input).
        #[arg(long)]
        k: Option<f64>,
        /// Also estimate each tail from this many seeded draws.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Extremal constants.
    Constants {
        #[arg(long, value_enum)]
        which: Constant,
        #[arg(long, default_value = "1")]
        q: RenyiOrder,
        #[arg(long, default_value = "inf")]
        p: RenyiOrder,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Two-atom counterexample for the γ-extended functional.
    Counterexample {
        #[arg(long, default_value_t = 0.1)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
    },
    /// H_α(X - Y) <= H_α(X) + log 2.
    Epi {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_delimiter = ',', default_value = "2,3,inf")]
        alpha: Vec<RenyiOrder>,
    },
}

/// One output record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub check_name: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub margin: Option<f64>,
    pub verdict: Option<String>,
    pub params: String,
}

fn finite(v: f64) -> Option<f64> {
    (!v.is_nan()).then_some(v)
}

impl Row {
    pub fn value(name: &str, value: f64, params: &[(&str, String)]) -> Self {
        Row {
            check_name: name.to_string(),
            lhs: finite(value),
            rhs: None,
            margin: None,
            verdict: None,
            params: params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";"),
        }
    }

    pub fn failed(&self) -> bool {
        self.verdict.as_deref() == Some(Verdict::Fail.as_str())
    }
}

impl From<&CheckReport> for Row {
    fn from(r: &CheckReport) -> Self {
        Row {
            check_name: r.name.clone(),
            lhs: finite(r.lhs),
            rhs: finite(r.rhs),
            margin: finite(r.margin),
            verdict: Some(r.verdict.as_str().to_string()),
            params: r.params_string(),
        }
    }
}

impl From<CheckReport> for Row {
    fn from(r: CheckReport) -> Self {
        Row::from(&r)
    }
}

/// Structural predicates of a pmf.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Structure {
    pub log_concave: bool,
    pub direction: String,
    /// `integer`, `half_integer` or `none`.
    pub symmetry: String,
    pub center: Option<f64>,
    pub support_size: usize,
}

pub fn classify(x: &LatticePmf) -> Structure {
    let c = x.symmetry_center();
    Structure {
        log_concave: x.is_log_concave(),
        direction: x.monotonicity().as_str().to_string(),
        symmetry: match c {
            Some(c) if c.is_integer() => "integer",
            Some(_) => "half_integer",
            None => "none",
        }
        .to_string(),
        center: c.map(|c| c.value()),
        support_size: x.support_size(),
    }
}

fn classify_row(x: &LatticePmf) -> Row {
    let s = classify(x);
    let mut params = vec![
        ("log_concave", s.log_concave.to_string()),
        ("direction", s.direction),
        ("symmetry", s.symmetry),
    ];
    if let Some(c) = s.center {
        params.push(("center", c.to_string()));
    }
    params.push(("offset", x.offset().to_string()));
    Row::value("support_size", s.support_size as f64, &params)
}

struct Loaded {
    pmf: LatticePmf,
    law: Option<ParametricLaw>,
}

fn load(input: &InputArgs) -> Result<Loaded> {
    let file = match (&input.input, input.law) {
        (Some(path), _) => DistributionFile::from_path(path)?,
        (None, Some(law)) => DistributionFile::Law {
            law: match law {
                LawArg::Geometric => LawKind::Geometric,
                LawArg::SymmetricGeometric => LawKind::SymmetricGeometric,
            },
            lambda: input.lambda.ok_or_else(|| Error::Input("--law needs --lambda".into()))?,
        },
        (None, None) => return Err(Error::Input("give --input PATH or --law NAME --lambda X".into())),
    };
    let d = file.resolve(input.tail_tol)?;
    Ok(Loaded { pmf: d.pmf, law: d.law })
}

fn order(p: f64) -> RenyiOrder {
    RenyiOrder::new(p).expect("literal order")
}

fn t_grid_or_default(g: &Option<Vec<f64>>, default: &[f64]) -> Result<Vec<f64>> {
    let g = g.clone().unwrap_or_else(|| default.to_vec());
    if g.is_empty() || g.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::InvalidParameter(format!("t-grid must be non-empty and non-negative: {g:?}")));
    }
    Ok(g)
}

fn is_monotone_lc(x: &LatticePmf) -> bool {
    x.is_log_concave() && x.monotonicity().is_monotone()
}

fn is_int_symmetric_lc(x: &LatticePmf) -> bool {
    x.is_log_concave() && matches!(x.symmetry_center(), Some(c) if c.is_integer())
}

/// Decreasing copy of a monotone pmf, first atom at 0.
fn decreasing_view(x: &LatticePmf) -> LatticePmf {
    let y = if x.monotonicity().is_decreasing() { x.clone() } else { x.reflected() };
    y.shifted_to(0)
}

fn na(name: &str, reason: &str) -> Row {
    CheckReport::not_applicable(name, reason).into()
}

fn concentration_rows(x: &LatticePmf, ts: &[f64], k: f64) -> Vec<Row> {
    let mut rows = Vec::new();
    for &t in ts {
        for side in [Side::Upper, Side::Lower] {
            rows.push(concentration_check(x, t, k, side).into());
        }
    }
    rows
}

/// Layer cake at `p`, crossing against the matched geometric law, and the
/// convex order of the power-transformed level-count densities.
fn comparator_rows(x: &LatticePmf, p: f64, samples: usize) -> Result<Vec<Row>> {
    let y = decreasing_view(x);
    let mut rows: Vec<Row> = vec![cake_layer_check(&y, p).into()];
    if y.is_dirac() {
        rows.push(na("crossing", "point mass"));
        rows.push(na("convex_order", "point mass"));
        return Ok(rows);
    }
    let m = match_family(&y, p, ComparatorFamily::Geometric)?;
    let z = GeometricComparator::geometric(m.lambda)?;
    rows.push(crossing_verify(&y, &z, samples)?.param("lambda", m.lambda).into());
    if p > 1.0 {
        let u = power_transform_density(&level_count(&y), p - 1.0);
        let v = power_transform_density(&z.level_count(1e-300), p - 1.0);
        let grid = default_hinge_grid(&u, &v);
        rows.push(convex_order_check(&u, &v, &grid)?.param("p", p).into());
    }
    Ok(rows)
}

fn dominance_rows(x: &LatticePmf, p: f64, family: ComparatorFamily, qs: &[RenyiOrder]) -> Result<Vec<Row>> {
    let rep = renyi_dominance_report_with(x, p, qs, family)?;
    let m = rep.matched;
    let mut rows = vec![Row::value(
        "match",
        m.lambda,
        &[
            ("family", family.as_str().to_string()),
            ("p", p.to_string()),
            ("target", m.target.to_string()),
            ("residual", fmt_num(m.residual)),
            ("iterations", m.iterations.to_string()),
        ],
    )];
    rows.extend(rep.rows.iter().map(Row::from));
    Ok(rows)
}

fn verify(x: &LatticePmf, law: Option<ParametricLaw>, suite: Suite, p: f64, ts: &[f64]) -> Result<Vec<Row>> {
    let monotone = matches!(suite, Suite::All | Suite::Monotone);
    let symmetric = matches!(suite, Suite::All | Suite::Symmetric);
    let general = matches!(suite, Suite::All | Suite::General);
    let mono_lc = is_monotone_lc(x);
    let sym_lc = is_int_symmetric_lc(x);
    let q_grid: Vec<RenyiOrder> = DEFAULT_Q_GRID.iter().map(|&q| order(q)).collect();
    let mut rows = vec![classify_row(x)];

    if monotone || symmetric {
        rows.push(match check_varentropy(x) {
            Ok(r) => r.into(),
            Err(e) => na("varentropy", &e.to_string()),
        });
    }
    if monotone {
        const MONO: &[&str] = &["phi_concavity", "renyi_gap", "concentration", "k_constant", "epi_reversal", "crossing", "renyi_dominance"];
        if !mono_lc {
            rows.extend(MONO.iter().map(|n| na(n, "not monotone log-concave")));
        } else {
            rows.push(check_concavity_default(x).to_check().into());
            for (pp, qq) in [(f64::INFINITY, 1.0), (2.0, 1.0), (3.0, 1.5)] {
                rows.push(check_renyi_gap(x, order(pp), order(qq))?.into());
            }
            rows.extend(concentration_rows(x, ts, 1.0));
            let (a, k) = k_constant(x, &default_alpha_grid())?;
            rows.push(CheckReport::new("k_constant", k, 1.0, 1.0 - k, Verdict::from_bool(k < 1.0)).param("alpha", a).into());
            for alpha in [2.0, f64::INFINITY] {
                let r = match law {
                    Some(l) if l.kind() == LawKind::Geometric => epi_reversal_geometric(l.lambda(), order(alpha))?,
                    _ => epi_reversal_check(x, order(alpha)),
                };
                rows.push(r.into());
            }
            if x.is_dirac() {
                rows.push(na("crossing", "point mass"));
                rows.push(na("renyi_dominance", "point mass"));
            } else {
                rows.extend(comparator_rows(x, p, 256)?);
                rows.extend(dominance_rows(x, p, ComparatorFamily::Geometric, &q_grid)?);
            }
        }
    }
    if symmetric {
        const SYM: &[&str] = &["concentration", "fold_symmetric", "c_bound", "renyi_dominance"];
        if !sym_lc {
            rows.extend(SYM.iter().map(|n| na(n, "not integer-symmetric log-concave")));
        } else {
            let vs = sup_varentropy_symmetric().1;
            rows.extend(concentration_rows(x, ts, vs));
            let centered = x.shifted_to(x.offset() - x.symmetry_center().expect("symmetric").doubled() / 2);
            rows.push(fold_symmetric(&centered)?.report.into());
            for (qq, pp) in [(1.0, f64::INFINITY), (1.0, 2.0)] {
                rows.push(check_c_bound(x, order(qq), order(pp))?.into());
            }
            if x.is_dirac() {
                rows.push(na("renyi_dominance", "point mass"));
            } else {
                rows.extend(dominance_rows(x, p, ComparatorFamily::SymmetricGeometric, &q_grid)?);
            }
        }
    }
    if general {
        rows.push(h2_hinf_identity_check(x).into());
        let mm = mean_mode_check(x);
        rows.push(mm.headline.into());
        rows.push(mm.interpolated_check.into());
        rows.push(cake_layer_check(x, 2.0).into());
    }
    Ok(rows)
}

fn execute(cmd: &Command) -> Result<Vec<Row>> {
    match cmd {
        Command::Verify { input, suite, p, t_grid } => {
            let d = load(input)?;
            let ts = t_grid_or_default(t_grid, &DEFAULT_T_GRID)?;
            verify(&d.pmf, d.law, *suite, *p, &ts)
        }
        Command::Entropy { input, p } => {
            let d = load(input)?;
            let mut rows = vec![classify_row(&d.pmf)];
            for &q in p {
                let mut params = vec![("p", q.to_string())];
                if let Some(law) = d.law {
                    params.push(("closed_form", renyi_law(&law, q).to_string()));
                }
                rows.push(Row::value("renyi_entropy", renyi(&d.pmf, q), &params));
            }
            Ok(rows)
        }
        Command::Varentropy { input } => {
            let d = load(input)?;
            let mut params = Vec::new();
            if let Some(law) = d.law {
                params.push(("closed_form", varentropy_law(&law).to_string()));
            }
            let mut rows = vec![classify_row(&d.pmf), Row::value("varentropy_value", varentropy(&d.pmf), &params)];
            rows.push(match check_varentropy(&d.pmf) {
                Ok(r) => r.into(),
                Err(e) => na("varentropy", &e.to_string()),
            });
            Ok(rows)
        }
        Command::Phi { input, t_grid } => {
            let d = load(input)?;
            let ts = t_grid_or_default(t_grid, &[0.1, 0.5, 1.0, 2.0, 5.0, 10.0])?;
            let mut rows = vec![classify_row(&d.pmf)];
            for &t in &ts {
                if t <= 0.0 {
                    return Err(Error::InvalidParameter("phi needs t > 0".into()));
                }
                rows.push(Row::value("phi", phi(&d.pmf, t), &[("t", t.to_string())]));
                rows.push(Row::value("phi_second", phi_second_derivative(&d.pmf, t), &[("t", t.to_string())]));
            }
            let mut check: Row = check_concavity_default(&d.pmf).to_check().into();
            if !is_monotone_lc(&d.pmf) {
                // concavity is only guaranteed for monotone log-concave input
                check.params.push_str(";hypotheses=not_monotone_log_concave");
                if check.failed() {
                    check.verdict = Some(Verdict::NotApplicable.as_str().to_string());
                }
            }
            rows.push(check);
            Ok(rows)
        }
        Command::Crossing { input, p, samples } => {
            let d = load(input)?;
            if !d.pmf.monotonicity().is_monotone() {
                return Err(Error::NotDecreasing);
            }
            if *p <= 1.0 {
                return Err(Error::BadOrder(*p));
            }
            let mut rows = vec![classify_row(&d.pmf)];
            rows.extend(comparator_rows(&d.pmf, *p, *samples)?);
            Ok(rows)
        }
        Command::Match { input, p, family, q } => {
            let d = load(input)?;
            let fam = match family {
                FamilyArg::Auto => ComparatorFamily::for_pmf(&d.pmf)?,
                FamilyArg::Geometric => ComparatorFamily::Geometric,
                FamilyArg::SymmetricGeometric => ComparatorFamily::SymmetricGeometric,
            };
            let qs = q.clone().unwrap_or_else(|| DEFAULT_Q_GRID.iter().map(|&v| order(v)).collect());
            dominance_rows(&d.pmf, *p, fam, &qs)
        }
        Command::Concentration { input, t_grid, k, samples, seed } => {
            let d = load(input)?;
            let x = &d.pmf;
            let ts = t_grid_or_default(t_grid, &DEFAULT_T_GRID)?;
            let k = match k {
                Some(k) if *k > 0.0 => *k,
                Some(k) => return Err(Error::InvalidParameter(format!("K must be positive, got {k}"))),
                None => match varentropy_class(x) {
                    Ok(VarentropyClass::IntegerSymmetric) => sup_varentropy_symmetric().1,
                    _ => 1.0,
                },
            };
            let mut rows = vec![classify_row(x)];
            let draws = samples.map(|n| sample(x, *seed, n));
            let h = crate::entropy::shannon(x);
            for &t in &ts {
                for side in [Side::Upper, Side::Lower] {
                    let mut r = concentration_check(x, t, k, side);
                    if let Some(draws) = &draws {
                        let hits = draws
                            .iter()
                            .filter(|&&i| {
                                let info = -x.pmf(i).ln();
                                match side {
                                    Side::Upper => info >= h + t,
                                    Side::Lower => info <= h - t,
                                }
                            })
                            .count();
                        r = r.param("mc_estimate", Num(hits as f64 / draws.len().max(1) as f64)).param("seed", seed);
                    }
                    debug_assert_eq!(r.lhs, empirical_tail(x, t, side));
                    rows.push(r.into());
                }
            }
            Ok(rows)
        }
        Command::Constants { which, q, p, input } => match which {
            Constant::Vs => {
                let (l, v) = sup_varentropy_symmetric();
                Ok(vec![Row::value("v_s", v, &[("lambda_star", l.to_string())])])
            }
            Constant::C => {
                let c = c_constant(*q, *p)?;
                Ok(vec![Row::value(
                    "c_constant",
                    c.value,
                    &[("q", q.to_string()), ("p", p.to_string()), ("lambda", c.lambda.to_string())],
                )])
            }
            Constant::K => {
                let d = load(input)?;
                let (a, k) = k_constant(&d.pmf, &default_alpha_grid())?;
                Ok(vec![Row::value("k_constant", k, &[("alpha", a.to_string()), ("grid", "1e-3..1e3x200".into())])])
            }
        },
        Command::Counterexample { lambda, gamma } => Ok(vec![counterexample_check(*lambda, *gamma)?.into()]),
        Command::Epi { input, alpha } => {
            let d = load(input)?;
            let mut rows = vec![classify_row(&d.pmf)];
            for &a in alpha {
                let r = match d.law {
                    Some(l) if l.kind() == LawKind::Geometric && a.value() >= 2.0 => {
                        epi_reversal_geometric(l.lambda(), a)?
                    }
                    _ => epi_reversal_check(&d.pmf, a),
                };
                rows.push(r.into());
            }
            Ok(rows)
        }
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

/// Renders rows in the requested format.
pub fn render(rows: &[Row], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io_err = |e: csv::Error| Error::Input(format!("csv: {e}"));
            w.write_record(["check_name", "lhs", "rhs", "margin", "verdict", "params"]).map_err(io_err)?;
            for r in rows {
                w.write_record([
                    r.check_name.clone(),
                    fmt_opt(r.lhs),
                    fmt_opt(r.rhs),
                    fmt_opt(r.margin),
                    r.verdict.clone().unwrap_or_default(),
                    r.params.clone(),
                ])
                .map_err(io_err)?;
            }
            w.into_inner().map_err(|e| Error::Input(format!("csv: {e}")))
        }
        Format::Json => {
            // serde_json has no representation for ±∞; emit them as strings
            let value: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let num = |v: Option<f64>| match v {
                        None => serde_json::Value::Null,
                        Some(x) if x.is_finite() => serde_json::json!(x),
                        Some(x) => serde_json::Value::String(x.to_string()),
                    };
                    serde_json::json!({
                        "check_name": r.check_name,
                        "lhs": num(r.lhs),
                        "rhs": num(r.rhs),
                        "margin": num(r.margin),
                        "verdict": r.verdict,
                        "params": r.params,
                    })
                })
                .collect();
            let mut out = serde_json::to_vec_pretty(&value).map_err(|e| Error::Input(format!("json: {e}")))?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// writes the report. Returns the process exit code.
pub fn run_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    run(&config, stdout, stderr)
}

/// Runs a parsed configuration. See the module docs for exit codes.
pub fn run(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let rows = match execute(&config.command) {
        Ok(rows) => rows,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let bytes = match render(&rows, config.output.format) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let written = match &config.output.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(&bytes)),
        None => stdout.write_all(&bytes),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write report: {e}");
        return 2;
    }
    let failed = rows.iter().filter(|r| r.failed()).count();
    if failed > 0 {
        let _ = writeln!(stderr, "{failed} check(s) failed");
        1
    } else {
        0
    }
}

/// Entry point used by the binary.
pub fn main_entry() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with_args(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

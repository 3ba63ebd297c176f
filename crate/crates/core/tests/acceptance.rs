//! End-to-end acceptance suite: one line per criterion, exit status 1 if
//! any criterion fails. Runs without the libtest harness so every
//! criterion is reported even when an earlier one fails.

use std::f64::consts::{E, LN_2};
use std::process::ExitCode;
use std::time::Instant;

use lclc::entropy::{log_power_sum_geometric, power_sum, varentropy_geometric, RenyiOrder};
use lclc::inequalities::{
    check_renyi_gap_geometric, concentration_check, default_alpha_grid, epi_reversal_geometric,
    h2_hinf_identity_check, k_constant, k_constant_geometric, mean_mode_check, sup_varentropy_symmetric, Side,
};
use lclc::lattice::{materialize, LatticePmf, ParametricLaw};
use lclc::lyapunov::{check_concavity_default, counterexample_check, scan_five_atom_symmetric, scan_three_atom_symmetric};
use lclc::majorization::{
    cake_layer_check, convex_order_check, crossing_verify, default_hinge_grid, level_count, power_transform_density,
    GeometricComparator,
};
use lclc::matching::{match_geometric, renyi_dominance_report_with, ComparatorFamily};
use lclc::random::{arbitrary, decreasing_log_concave, log_concave, monotone_log_concave, seeded, symmetric_log_concave};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn order(p: f64) -> RenyiOrder {
    RenyiOrder::new(p).unwrap()
}

fn non_dirac(mut draw: impl FnMut() -> LatticePmf) -> LatticePmf {
    loop {
        let x = draw();
        if !x.is_dirac() {
            return x;
        }
    }
}

fn c1_vs_reproduction() -> Outcome {
    let start = Instant::now();
    let (lambda, vs) = sup_varentropy_symmetric();
    let secs = start.elapsed().as_secs_f64();
    let pass = (vs - 1.16923).abs() <= 1e-3 && secs < 1.0;
    outcome(pass, format!("V_S = {vs:.6} at λ* = {lambda:.6}, {:.1} ms", secs * 1e3))
}

fn c2_varentropy_sharpness() -> Outcome {
    let vs: Vec<(f64, f64)> = (1..=99)
        .map(|k| {
            let lam = k as f64 / 100.0;
            (lam, varentropy_geometric(lam).unwrap())
        })
        .collect();
    let max = vs.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    let small_p_min = vs.iter().filter(|(l, _)| 1.0 - l <= 0.02 + 1e-12).map(|v| v.1).fold(f64::INFINITY, f64::min);
    outcome(max < 1.0 && small_p_min > 0.99, format!("max V = {max:.6}, min V over p ≤ 0.02 = {small_p_min:.6}"))
}

fn c3_concavity_suite() -> Outcome {
    let mut rng = seeded(3);
    let (mut failures, mut worst_second, mut worst_diff) = (0, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for _ in 0..1000 {
        let x = monotone_log_concave(&mut rng, 60);
        let r = check_concavity_default(&x);
        worst_second = worst_second.max(r.max_phi_second);
        worst_diff = worst_diff.max(r.max_second_difference);
        if !(r.concave && r.max_phi_second <= 1e-9) {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!("1000 pmfs, {failures} failures, max Φ'' = {worst_second:.3e}, max second difference = {worst_diff:.3e}"),
    )
}

fn c4_three_atom_witness() -> Outcome {
    let s3 = scan_three_atom_symmetric(999);
    let s5 = scan_five_atom_symmetric(60);
    outcome(
        s3.found(1e-6),
        format!(
            "3-atom scan: max Φ'' = {:.3e} at t = {:.3} over {} pmfs (5-atom scan: max Φ'' = {:.3e} at t = {:.3})",
            s3.phi_second, s3.t, s3.candidates, s5.phi_second, s5.t
        ),
    )
}

fn c5_counterexample() -> Outcome {
    let r = counterexample_check(0.1, 1.0).unwrap();
    let first = (r.lhs - 4.8).abs() < 1e-12 && (r.rhs - 7.32).abs() < 1e-12 && r.lhs < r.rhs && r.passed();
    let lim = counterexample_check(1e-4, 1.0).unwrap();
    let ratio = lim.lhs / lim.rhs;
    let second = (ratio - 4.0 / 6.0).abs() < 1e-3 && lim.passed();
    outcome(
        first && second,
        format!(
            "λ = 0.1: lhs = {:.6}, rhs = {:.6}, concavity {}; λ = 1e-4: lhs/rhs = {ratio:.6}",
            r.lhs,
            r.rhs,
            r.get_param("concavity").unwrap_or("?")
        ),
    )
}

fn c6_identity() -> Outcome {
    let mut rng = seeded(6);
    let (mut failures, mut non_lc, mut worst) = (0, 0, 0.0f64);
    for _ in 0..1000 {
        let x = arbitrary(&mut rng, 60);
        if !x.is_log_concave() {
            non_lc += 1;
        }
        let r = h2_hinf_identity_check(&x);
        worst = worst.max(-r.margin);
        if !r.passed() {
            failures += 1;
        }
    }
    outcome(
        failures == 0 && non_lc > 0,
        format!("1000 pmfs ({non_lc} not log-concave), {failures} failures, max |H₂ − H_∞| = {worst:.3e}"),
    )
}

fn c7_epi_sharpness() -> Outcome {
    let r = epi_reversal_geometric(0.999, order(2.0)).unwrap();
    let gap = r.lhs - (r.rhs - LN_2);
    outcome(gap > LN_2 - 0.01 && gap <= LN_2, format!("H₂(X−Y) − H₂(X) = {gap:.9}, log 2 − gap = {:.3e}", LN_2 - gap))
}

fn c8_gap_sharpness() -> Outcome {
    let r = check_renyi_gap_geometric(0.999, order(3.0), order(1.5)).unwrap();
    outcome(r.margin > 0.0 && r.margin < 0.01, format!("margin = {:.6e}", r.margin))
}

fn c9_concentration() -> Outcome {
    let ts = [0.25, 0.5, 1.0, 2.0];
    let mut rng = seeded(9);
    let (mut checks, mut failures, mut worst) = (0, 0, f64::INFINITY);
    for _ in 0..200 {
        let x = monotone_log_concave(&mut rng, 60);
        for &t in &ts {
            for side in [Side::Upper, Side::Lower] {
                let r = concentration_check(&x, t, 1.0, side);
                checks += 1;
                worst = worst.min(r.margin);
                failures += usize::from(!r.passed());
            }
        }
    }
    let (_, vs) = sup_varentropy_symmetric();
    let (mut s_failures, mut s_worst) = (0, f64::INFINITY);
    for _ in 0..200 {
        let x = symmetric_log_concave(&mut rng, 30, true);
        for &t in &ts {
            for side in [Side::Upper, Side::Lower] {
                let r = concentration_check(&x, t, vs, side);
                checks += 1;
                s_worst = s_worst.min(r.margin);
                s_failures += usize::from(!r.passed());
            }
        }
    }
    outcome(
        failures + s_failures == 0,
        format!(
            "{checks} tail checks; monotone K = 1: {failures} failures, min slack {worst:.3e}; \
             symmetric K = V_S: {s_failures} failures, min slack {s_worst:.3e}"
        ),
    )
}

fn c10_majorization() -> Outcome {
    let ps = [1.5, 2.0, 3.0, 5.0];
    let mut rng = seeded(10);
    let (mut pairs, mut crossing_fail, mut cake_fail, mut sum_fail, mut convex_fail) = (0, 0, 0, 0, 0);
    let mut cake_worst = 0.0f64;
    for _ in 0..500 {
        let x = non_dirac(|| decreasing_log_concave(&mut rng, 60));
        for &p in &ps {
            pairs += 1;
            let m = match_geometric(&x, p).unwrap();
            let z = GeometricComparator::geometric(m.lambda).unwrap();
            if !crossing_verify(&x, &z, 256).unwrap().passed() {
                crossing_fail += 1;
            }
            let u = power_transform_density(&level_count(&x), p - 1.0);
            let v = power_transform_density(&z.level_count(1e-300), p - 1.0);
            if !convex_order_check(&u, &v, &default_hinge_grid(&u, &v)).unwrap().passed() {
                convex_fail += 1;
            }
            let qs: Vec<f64> = (1..8).map(|k| 1.0 + (p - 1.0) * k as f64 / 8.0).collect();
            for &t in qs.iter().chain([p].iter()) {
                let c = cake_layer_check(&x, t);
                cake_worst = cake_worst.max(c.margin);
                if !(c.margin < 1e-12) {
                    cake_fail += 1;
                }
            }
            for &q in &qs {
                let sx = power_sum(&x, q);
                let sz = log_power_sum_geometric(m.lambda, q).unwrap().exp();
                if sx < sz * (1.0 - 1e-12) {
                    sum_fail += 1;
                }
            }
        }
    }

    let sym_ps = [0.5, 1.5, 2.0, 3.0, 5.0];
    let grid: Vec<RenyiOrder> =
        [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, f64::INFINITY].map(order).to_vec();
    let (mut reports, mut sym_fail, mut sym_worst) = (0, 0, f64::INFINITY);
    for _ in 0..500 {
        let x = non_dirac(|| symmetric_log_concave(&mut rng, 30, true));
        for &p in &sym_ps {
            let rep = renyi_dominance_report_with(&x, p, &grid, ComparatorFamily::SymmetricGeometric).unwrap();
            reports += 1;
            sym_worst = sym_worst.min(rep.min_margin());
            sym_fail += usize::from(!rep.passed());
        }
    }
    let pass = crossing_fail + cake_fail + sum_fail + convex_fail + sym_fail == 0;
    outcome(
        pass,
        format!(
            "{pairs} pairs: crossing {crossing_fail}, convex order {convex_fail}, layer cake {cake_fail} \
             (max gap {cake_worst:.2e}), power sums {sum_fail} failures; \
             {reports} symmetric sign tables: {sym_fail} failures, min margin {sym_worst:.3e}"
        ),
    )
}

fn c11_mean_mode() -> Outcome {
    let mut rng = seeded(11);
    let (mut failures, mut non_monotone) = (0, 0);
    for _ in 0..1000 {
        let x = log_concave(&mut rng, 60);
        if !x.monotonicity().is_monotone() {
            non_monotone += 1;
        }
        if !mean_mode_check(&x).headline.passed() {
            failures += 1;
        }
    }
    let g = materialize(&ParametricLaw::geometric(20.0 / 21.0).unwrap(), 1e-15).unwrap();
    let mm = mean_mode_check(&g);
    let ratio = E * mm.floor_mass.max(mm.ceil_mass) / mm.max_mass;
    outcome(
        failures == 0 && non_monotone > 0 && mm.mean == 20.0 && (1.0..1.05).contains(&ratio),
        format!(
            "1000 pmfs ({non_monotone} non-monotone), {failures} failures; geometric mean {}: ratio = {ratio:.6}",
            mm.mean
        ),
    )
}

fn c12_k_constant() -> Outcome {
    let grid = default_alpha_grid();
    let mut rng = seeded(12);
    let (mut failures, mut worst) = (0, 0.0f64);
    for _ in 0..200 {
        let x = monotone_log_concave(&mut rng, 60);
        let (_, k) = k_constant(&x, &grid).unwrap();
        worst = worst.max(k);
        failures += usize::from(!(k < 1.0));
    }
    let (_, kg) = k_constant_geometric(0.99, &grid).unwrap();
    let g = materialize(&ParametricLaw::geometric(0.99).unwrap(), 1e-15).unwrap();
    let (_, km) = k_constant(&g, &grid).unwrap();
    outcome(
        failures == 0 && kg > 0.95 && km > 0.95,
        format!("200 pmfs: max K = {worst:.6}, {failures} ≥ 1; geometric 0.99: K = {kg:.6} (materialized {km:.6})"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("symmetric varentropy supremum", c1_vs_reproduction),
        ("geometric varentropy sharpness", c2_varentropy_sharpness),
        ("concavity on monotone log-concave pmfs", c3_concavity_suite),
        ("three-atom non-monotone witness", c4_three_atom_witness),
        ("two-point counterexample", c5_counterexample),
        ("collision / min-entropy identity", c6_identity),
        ("EPI reversal sharpness", c7_epi_sharpness),
        ("Rényi gap sharpness", c8_gap_sharpness),
        ("concentration", c9_concentration),
        ("majorization machinery", c10_majorization),
        ("mean versus mode", c11_mean_mode),
        ("K constant", c12_k_constant),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} [{name}] {} ({:.2}s)", i + 1, o.detail, t.elapsed().as_secs_f64());
        if !o.pass {
            failed.push(i + 1);
        }
    }
    println!(
        "acceptance: {} passed, {} failed {:?} in {:.1}s",
        criteria.len() - failed.len(),
        failed.len(),
        failed,
        start.elapsed().as_secs_f64()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

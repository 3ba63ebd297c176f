//! Randomized properties across modules.

use proptest::prelude::*;

use crate::entropy::{power_sum, renyi, varentropy, RenyiOrder};
use crate::inequalities::{concentration_check, h2_hinf_identity_check, mean_mode_check, Side};
use crate::lattice::{normalize, LatticePmf};
use crate::lyapunov::{check_concavity_default, phi};
use crate::majorization::{cake_layer_check, crossing_verify, GeometricComparator};
use crate::matching::{match_geometric, renyi_dominance_report, RESIDUAL_TOL};
use crate::random::{decreasing_log_concave, monotone_log_concave, seeded};

fn any_pmf() -> impl Strategy<Value = LatticePmf> {
    (prop::collection::vec(1e-6..1.0f64, 1..40), -20i64..20).prop_map(|(w, o)| normalize(&w, o).unwrap())
}

fn monotone_lc() -> impl Strategy<Value = LatticePmf> {
    any::<u64>().prop_map(|s| monotone_log_concave(&mut seeded(s), 40))
}

fn decreasing_lc() -> impl Strategy<Value = LatticePmf> {
    any::<u64>().prop_map(|s| decreasing_log_concave(&mut seeded(s), 40)).prop_filter("non-Dirac", |x| !x.is_dirac())
}

fn order(p: f64) -> RenyiOrder {
    RenyiOrder::new(p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn h2_identity(x in any_pmf()) {
        let r = h2_hinf_identity_check(&x);
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn layer_cake(x in any_pmf(), t in 0.05..6.0f64) {
        let r = cake_layer_check(&x, t);
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn renyi_non_increasing(x in any_pmf(), p in 0.0..5.0f64, dp in 0.01..3.0f64) {
        let (a, b) = (renyi(&x, order(p)), renyi(&x, order(p + dp)));
        prop_assert!(b <= a + 1e-12, "H_{} = {} < H_{} = {}", p, a, p + dp, b);
        prop_assert!(renyi(&x, order(f64::INFINITY)) <= b + 1e-12);
    }

    #[test]
    fn shift_and_reflection_invariance(x in any_pmf(), o in -50i64..50, t in 0.1..4.0f64) {
        let y = x.shifted_to(o).reflected();
        prop_assert!((phi(&x, t) - phi(&y, t)).abs() < 1e-12);
        prop_assert!((renyi(&x, order(t)) - renyi(&y, order(t))).abs() < 1e-12);
    }

    #[test]
    fn concave_on_monotone(x in monotone_lc()) {
        let r = check_concavity_default(&x);
        prop_assert!(r.concave, "max Φ'' = {}", r.max_phi_second);
    }

    #[test]
    fn varentropy_below_one(x in monotone_lc()) {
        prop_assert!(varentropy(&x) < 1.0);
    }

    #[test]
    fn tails_within_bound(x in monotone_lc(), t in 0.01..5.0f64) {
        for side in [Side::Upper, Side::Lower] {
            let r = concentration_check(&x, t, 1.0, side);
            prop_assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn mean_mode(x in monotone_lc()) {
        let m = mean_mode_check(&x);
        prop_assert!(m.headline.passed() && m.interpolated_check.passed(), "{}", m.headline);
    }

    #[test]
    fn matching(x in decreasing_lc(), p in 1.05..6.0f64) {
        let m = match_geometric(&x, p).unwrap();
        prop_assert!(m.residual < RESIDUAL_TOL, "{:?}", m);
        let z = GeometricComparator::geometric(m.lambda).unwrap();
        let r = crossing_verify(&x, &z, 64).unwrap();
        prop_assert!(r.passed(), "{}", r);
        // power sums below the matching order dominate the comparator's
        let q = 1.0 + 0.5 * (p - 1.0);
        let sz = crate::entropy::log_power_sum_geometric(m.lambda, q).unwrap().exp();
        prop_assert!(power_sum(&x, q) >= sz * (1.0 - 1e-12));
    }

    #[test]
    fn renyi_sign_pattern(x in decreasing_lc(), p in 0.2..6.0f64) {
        prop_assume!((p - 1.0).abs() > 0.05);
        let grid: Vec<RenyiOrder> = [0.1, 0.5, 1.0, 2.0, 4.0, f64::INFINITY].map(order).to_vec();
        let rep = renyi_dominance_report(&x, p, &grid).unwrap();
        prop_assert!(rep.passed(), "min margin {}", rep.min_margin());
    }
}

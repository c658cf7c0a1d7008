//! Sweeps, derivatives and critical-point estimation end to end.

use thermodiscord::critical::{
    derivative_values, estimate_cp, estimate_from_values, estimator_comparison, sweep, uniform_grid,
};
use thermodiscord::models::xxz;
use thermodiscord::{Error, Measure, ModelSpec, Rule, TwoSpinXYZParams, XXZParams, XYParams};

#[test]
fn xxz_sweep_shape() {
    let m = ModelSpec::Xxz {
        params: XXZParams::new(0.0, 0.0, 1.0, 0.1, 8).unwrap(),
    };
    let s = sweep(&m, "delta", -2.0, 2.0, 64).unwrap();
    assert_eq!(s.len(), 64);
    assert!(s.holes.is_empty());
    s.require_complete().unwrap();
}

#[test]
fn xxx_pair_entanglement_sets_in_at_threshold() {
    let m = ModelSpec::Xyz2 {
        params: TwoSpinXYZParams::xxx(0.0, 0.0, 0.5).unwrap(),
        xxx: true,
    };
    let s = sweep(&m, "j", -2.0, 2.0, 200).unwrap();
    let e = s.column(Measure::Eof).unwrap();
    let first = e.iter().position(|&v| v > 0.0).unwrap();
    let jc = 0.5 * 3f64.ln();
    assert!(s.grid[first - 1] <= jc && s.grid[first] >= jc);
}

#[test]
fn sweep_rejects_unknown_parameter_and_short_grids() {
    let m = ModelSpec::Xy {
        params: XYParams::new(1.0, 1.0, 0.1, 1).unwrap(),
    };
    assert!(matches!(sweep(&m, "delta", 0.0, 1.0, 32), Err(Error::InvalidParameter(_))));
    assert!(sweep(&m, "lambda", 0.0, 1.0, 8).is_err());
    assert!(sweep(&m, "lambda", 1.0, 0.0, 32).is_err());
}

#[test]
fn sweep_records_failing_points_as_holes() {
    let m = ModelSpec::Xy {
        params: XYParams::new(1.0, 1.0, 0.5, 1).unwrap(),
    };
    let s = sweep(&m, "kt", -0.5, 0.5, 41).unwrap();
    assert!(!s.holes.is_empty());
    assert!(matches!(s.require_complete(), Err(Error::SweepPoint { .. })));
    assert!(matches!(
        estimate_cp(&s, Measure::Discord, Rule::FirstOrder),
        Err(Error::HolesPresent(_))
    ));
}

#[test]
fn first_derivative_of_sine() {
    let g = uniform_grid(0.0f64, 2.0, 2001).unwrap();
    let f: Vec<f64> = g.iter().map(|x| x.sin()).collect();
    let d = derivative_values(&g, &f, 1).unwrap();
    for (i, v) in d.iter().enumerate() {
        assert!((v - g[i + 1].cos()).abs() < 1e-6);
    }
}

#[test]
fn kink_detector() {
    let g = uniform_grid(-1.0f64, 1.0, 101).unwrap();
    let f: Vec<f64> = g.iter().map(|x| (x - 0.3).abs()).collect();
    let e = estimate_from_values(&g, &f, 2, Measure::Discord, None).unwrap();
    assert!((e.grid_location - 0.3).abs() <= g[1] - g[0]);
}

#[test]
fn window_without_the_transition_hits_the_boundary() {
    let m = ModelSpec::Xy {
        params: XYParams::new(1.0, 1.0, 0.01, 1).unwrap(),
    };
    let s = sweep(&m, "lambda", 0.4, 0.8, 64).unwrap();
    let r = estimate_cp(&s, Measure::Discord, Rule::FirstOrder);
    assert!(matches!(r, Err(Error::ExtremumOnBoundary { .. })), "{r:?}");
}

#[test]
fn estimation_is_deterministic_and_stable_under_refinement() {
    let m = ModelSpec::Xy {
        params: XYParams::new(1.0, 0.0, 0.1, 1).unwrap(),
    };
    let coarse = sweep(&m, "lambda", 0.5, 1.5, 200).unwrap();
    let again = sweep(&m, "lambda", 0.5, 1.5, 200).unwrap();
    let fine = sweep(&m, "lambda", 0.5, 1.5, 400).unwrap();
    let a = estimate_cp(&coarse, Measure::Discord, Rule::FirstOrder).unwrap();
    let b = estimate_cp(&again, Measure::Discord, Rule::FirstOrder).unwrap();
    let c = estimate_cp(&fine, Measure::Discord, Rule::FirstOrder).unwrap();
    assert_eq!(a, b);
    assert!((a[0].location - c[0].location).abs() < coarse.grid[1] - coarse.grid[0]);
}

#[test]
fn xxz_comparison_table_and_ranking() {
    let m = ModelSpec::Xxz {
        params: XXZParams::new(0.0, 12.0, 1.0, 0.1, 10).unwrap(),
    };
    let kts: Vec<f64> = (1..=10).map(|i| 0.1 * i as f64).collect();
    let estimators = [Measure::Discord, Measure::Eof, Measure::Sxx, Measure::Szz];
    let rows = estimator_comparison(&m, "delta", (0.0, 4.0), 200, &kts, &estimators, Rule::FirstOrder).unwrap();
    assert_eq!(rows.len(), kts.len() * estimators.len());
    let reference = xxz::cp_first_order(12.0f64, 1.0).unwrap();
    assert!(rows.iter().all(|r| r.reference == Some(reference)));
    let err = |kt: f64, m: Measure| {
        rows.iter()
            .find(|r| r.kt == kt && r.estimator == m)
            .and_then(|r| r.error)
            .unwrap_or(f64::INFINITY)
    };
    let better = kts
        .iter()
        .filter(|&&kt| err(kt, Measure::Discord) <= err(kt, Measure::Eof))
        .count();
    assert!(2 * better > kts.len(), "discord closer at only {better} of {} temperatures", kts.len());
}

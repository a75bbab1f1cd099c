mod common;

use common::{rows, setup};
use dirac_msy::oracle::{
    approximation_error_report, matching_defect, numerov_integrate, shooting_eigenvalue, Direction, RadialModel,
    ShootingConfig,
};
use dirac_msy::spectrum::{solve_energy, BranchPolicy};
use dirac_msy::wavefn::count_nodes;
use dirac_msy::{Error, PotentialParams, QuantumState};

#[test]
fn closed_form_agrees_with_shooting_on_spot_checks() {
    for t in 1..=4 {
        let all = rows(t);
        let spots = [all[0], all[1], all[all.len() - 2], all[all.len() - 1]];
        for row in spots {
            let (p, s) = setup(t, row.tensor);
            let closed = solve_energy(&row.state, &p, &s, None, BranchPolicy::Auto).unwrap().energy;
            let cfg = ShootingConfig::around(closed, &row.state, &p, &s, RadialModel::Approximated).unwrap();
            let shot = shooting_eigenvalue(&row.state, &p, &s, &cfg).unwrap();
            assert!((shot - closed).abs() <= 1e-4, "table {t} {}: {shot} vs {closed}", row.state);
            assert!((shot - row.energy).abs() <= 1e-4);
        }
    }
}

#[test]
fn shooting_follows_node_target() {
    let (p, s) = setup(2, 0.0);
    let q0 = QuantumState::new(0, -2).unwrap();
    let q1 = QuantumState::new(1, -2).unwrap();
    let cfg = ShootingConfig::for_state(&q0, &p, &s, RadialModel::Approximated).unwrap();
    let e0 = shooting_eigenvalue(&q0, &p, &s, &cfg).unwrap();
    let e1 = shooting_eigenvalue(&q1, &p, &s, &ShootingConfig { node_target: 1, ..cfg }).unwrap();
    assert!((e0 - 5.001904476).abs() < 1e-4);
    assert!((e1 - 5.007439826).abs() < 1e-4);
    for (e, nodes) in [(e0, 0), (e1, 1)] {
        let qf = dirac_msy::oracle::radial_q(RadialModel::Approximated, e, &q0, &p, &s);
        let out = numerov_integrate(&qf, &cfg.grid, Direction::Outward).unwrap();
        let inw = numerov_integrate(&qf, &cfg.grid, Direction::Inward).unwrap();
        let m = ((cfg.match_point - cfg.grid.r_min) / cfg.grid.step().unwrap()) as usize;
        let k = out[m] / inw[m];
        let joined: Vec<f64> = out[..m].iter().copied().chain(inw[m..].iter().map(|v| v * k)).collect();
        assert_eq!(count_nodes(&joined), nodes);
    }
}

#[test]
fn matching_defect_vanishes_at_table_energy() {
    let (p, s) = setup(1, 0.0);
    let q = QuantumState::new(1, -1).unwrap();
    let cfg = ShootingConfig::around(-5.009375979, &q, &p, &s, RadialModel::Approximated).unwrap();
    let at = matching_defect(-5.009375979, &q, &p, &s, &cfg).unwrap();
    let off = matching_defect(-5.009375979 + 1e-3, &q, &p, &s, &cfg).unwrap();
    assert!(at.abs() < 1e-5 * off.abs(), "{at} {off}");
}

#[test]
fn misplaced_bracket_errors() {
    let (p, s) = setup(1, 0.0);
    let q = QuantumState::new(1, -1).unwrap();
    let cfg = ShootingConfig::for_state(&q, &p, &s, RadialModel::Approximated).unwrap();
    let narrow = ShootingConfig { energy_bracket: (-5.0120, -5.0110), ..cfg };
    assert!(matches!(shooting_eigenvalue(&q, &p, &s, &narrow), Err(Error::Bracket { .. })));
    let bad = ShootingConfig { match_point: cfg.grid.r_max + 1.0, ..cfg };
    assert!(shooting_eigenvalue(&q, &p, &s, &bad).is_err());
}

#[test]
fn approximation_gap_is_below_level_spacing_and_grows_with_alpha() {
    let (_, s) = setup(1, 0.0);
    let q = QuantumState::new(1, -1).unwrap();
    let mut last = 0.0;
    for alpha in [0.01, 0.02, 0.05, 0.1] {
        let p = PotentialParams::new(-0.2, 0.1, 1.0, -2.0, 1.0, -1.0, alpha).unwrap();
        let cfg = ShootingConfig::for_state(&q, &p, &s, RadialModel::Approximated).unwrap();
        let gap = approximation_error_report(&q, &p, &s, &cfg).unwrap().gap().abs();
        if alpha == 0.01 {
            assert!(gap < 5e-3, "{gap}");
        }
        assert!(gap > last, "alpha {alpha}: {gap} <= {last}");
        last = gap;
    }
}

#[test]
fn gap_vanishes_when_only_approximated_terms_drop_out() {
    // κ + H = 0 removes the centrifugal term, V1 = 0 the Yukawa tail.
    let (_, s) = setup(1, 1.0);
    let p = PotentialParams::new(-0.2, 0.0, 1.0, -2.0, 1.0, -1.0, 0.01).unwrap();
    let q = QuantumState::new(1, -1).unwrap();
    let cfg = ShootingConfig::for_state(&q, &p, &s, RadialModel::Approximated).unwrap();
    let report = approximation_error_report(&q, &p, &s, &cfg).unwrap();
    assert!(report.gap().abs() < 1e-8, "{report:?}");
    // with the tail back in only its approximation contributes
    let p = PotentialParams { v1: 0.1, ..p };
    let cfg = ShootingConfig::for_state(&q, &p, &s, RadialModel::Approximated).unwrap();
    assert!(approximation_error_report(&q, &p, &s, &cfg).unwrap().gap().abs() > 1e-8);
}

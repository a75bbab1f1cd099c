use dirac_msy::spectrum::{coulomb_trend_check, deng_fan_map, solve_energy, yukawa_reduction, BranchPolicy};
use dirac_msy::{Error, PotentialChoice, PotentialParams, QuantumState, SymmetryLimit, SymmetrySpec};
use proptest::prelude::*;

proptest! {
    #[test]
    fn deng_fan_constraints_hold(de in 0.01f64..50.0, b in -0.99f64..20.0) {
        let p = deng_fan_map(de, b, 0.1).unwrap();
        prop_assert_eq!(p.v0 * p.a * p.a, de);
        prop_assert_eq!(p.v0 * p.a * p.b, -de * (1.0 + b));
        prop_assert_eq!(p.v0 * p.b * p.b, de * (1.0 + b) * (1.0 + b));
        prop_assert_eq!((p.c, p.d, p.v1), (1.0, -1.0, 0.0));
    }

    #[test]
    fn yukawa_reduction_keeps_everything_but_v0(v0 in -1.0f64..1.0, v1 in -1.0f64..1.0, alpha in 0.001f64..0.5) {
        let p = PotentialParams::new(v0, v1, 1.0, -2.0, 1.0, -1.0, alpha).unwrap();
        let y = yukawa_reduction(&p);
        prop_assert_eq!(y.v0, 0.0);
        prop_assert_eq!(PotentialParams { v0: p.v0, ..y }, p);
    }
}

fn spin() -> SymmetrySpec {
    SymmetrySpec::new(SymmetryLimit::Spin, PotentialChoice::First, 0.0, 0.0, 5.0).unwrap()
}

#[test]
fn coulomb_limit_sequence_is_cauchy() {
    let p = PotentialParams::new(0.0, 0.1, 1.0, -2.0, 1.0, -1.0, 0.08).unwrap();
    let q = QuantumState::new(0, -1).unwrap();
    let alphas: Vec<f64> = (0..8).map(|i| 0.08 / 2f64.powi(i)).collect();
    let e = coulomb_trend_check(&p, &spin(), &q, &alphas).unwrap();
    let steps: Vec<f64> = e.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    for w in steps.windows(2) {
        assert!(w[1] < w[0], "{steps:?}");
    }
    let same = coulomb_trend_check(&p, &spin(), &q, &[0.02, 0.02]).unwrap();
    assert_eq!(same[0], same[1]);
}

#[test]
fn no_potential_no_bound_state() {
    let p = PotentialParams::new(0.0, 0.0, 1.0, -2.0, 1.0, -1.0, 0.01).unwrap();
    let q = QuantumState::new(0, -1).unwrap();
    let r = coulomb_trend_check(&p, &spin(), &q, &[0.01]);
    assert!(matches!(r, Err(Error::NoBoundState { .. })), "{r:?}");
}

#[test]
fn yukawa_energies_fall_monotonically_with_coupling() {
    let q = QuantumState::new(0, -1).unwrap();
    let e: Vec<f64> = (1..=10)
        .map(|i| {
            let p = PotentialParams::new(0.0, 0.02 * i as f64, 1.0, -2.0, 1.0, -1.0, 0.01).unwrap();
            solve_energy(&q, &p, &spin(), None, BranchPolicy::Auto).unwrap().energy
        })
        .collect();
    assert!(e.windows(2).all(|w| w[1] < w[0]), "{e:?}");
}

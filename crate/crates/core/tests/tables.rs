mod common;

use common::{rows, setup};
use dirac_msy::spectrum::{doublet_partner, eigenvalue_residual, solve_energy, BranchPolicy};
use dirac_msy::{Branch, QuantumState, SymmetryLimit};

#[test]
fn every_tabulated_energy() {
    let mut worst = 0.0_f64;
    for t in 1..=4 {
        for row in rows(t) {
            let (p, s) = setup(t, row.tensor);
            let bs = solve_energy(&row.state, &p, &s, None, BranchPolicy::Auto).unwrap();
            let err = (bs.energy - row.energy).abs();
            worst = worst.max(err);
            assert!(err <= 1e-6, "table {t} {} H={}: {} vs {}", row.state, row.tensor, bs.energy, row.energy);
            assert_eq!(bs.branch, Branch::Minus);
        }
    }
    assert!(worst < 1e-8, "{worst}");
}

#[test]
fn residual_brackets_each_root() {
    for t in 1..=4 {
        for row in rows(t) {
            let (p, s) = setup(t, row.tensor);
            let f = |e| eigenvalue_residual(e, &row.state, &p, &s, Branch::Minus).unwrap();
            assert!(f(row.energy - 1e-5) * f(row.energy + 1e-5) < 0.0, "table {t} {}", row.state);
        }
    }
}

#[test]
fn doublets_degenerate_without_tensor_and_split_with_it() {
    for t in 1..=4 {
        for row in rows(t).into_iter().filter(|r| r.state.kappa < 0) {
            let (p, s) = setup(t, row.tensor);
            let partner = doublet_partner(&row.state, &s).unwrap();
            let e1 = solve_energy(&row.state, &p, &s, None, BranchPolicy::Auto).unwrap().energy;
            let e2 = solve_energy(&partner, &p, &s, None, BranchPolicy::Auto).unwrap().energy;
            if row.tensor == 0.0 {
                assert!((e1 - e2).abs() <= 1e-9, "table {t} {}: {}", row.state, e1 - e2);
            } else {
                assert!((e1 - e2).abs() >= 1e-5, "table {t} {}: {}", row.state, e1 - e2);
            }
        }
    }
}

#[test]
fn pseudospin_energies_are_negative() {
    for t in [1, 3] {
        for row in rows(t) {
            let (p, s) = setup(t, row.tensor);
            assert!(solve_energy(&row.state, &p, &s, None, BranchPolicy::Auto).unwrap().energy < 0.0);
        }
    }
}

#[test]
fn energies_move_monotonically_with_n() {
    for t in 1..=4 {
        let (p, s) = setup(t, 0.0);
        for kappa in [-2, -3, 2, 3] {
            let e: Vec<f64> = (1..4)
                .map(|n| {
                    solve_energy(&QuantumState::new(n, kappa).unwrap(), &p, &s, None, BranchPolicy::Auto)
                        .unwrap()
                        .energy
                })
                .collect();
            for w in e.windows(2) {
                match s.limit {
                    SymmetryLimit::Spin => assert!(w[1] > w[0]),
                    SymmetryLimit::Pseudospin => assert!(w[1] < w[0]),
                }
            }
        }
    }
}

#[test]
fn kappa_enters_only_through_the_centrifugal_product() {
    let st = |n, k| QuantumState::new(n, k).unwrap();
    // (state, H) pairs with equal centrifugal products and equal degree
    let cases = [
        (2, (st(1, -3), 0.0), (st(1, 2), 0.0)),
        (4, (st(0, -2), 0.5), (st(0, 1), -0.5)),
        (1, (st(2, -1), 0.0), (st(1, 2), 0.0)),
        (3, (st(1, -2), 0.3), (st(0, 3), -0.3)),
    ];
    let trial = [0.9973, 0.9991, 1.0004, 1.0017, 1.0032];
    for (t, (qa, ha), (qb, hb)) in cases {
        let (p, sa) = setup(t, ha);
        let sb = sa.with_tensor(hb);
        let (fa, fb) = (qa.centrifugal_factor(sa.limit, ha), qb.centrifugal_factor(sb.limit, hb));
        assert!((fa - fb).abs() <= 1e-14 * fa.abs());
        assert_eq!(qa.radial_degree(sa.limit), qb.radial_degree(sb.limit));
        let centre = if sa.limit == SymmetryLimit::Spin { sa.mass } else { -sa.mass };
        for x in trial {
            let e = centre * x;
            let ra = eigenvalue_residual(e, &qa, &p, &sa, Branch::Minus).unwrap();
            let rb = eigenvalue_residual(e, &qb, &p, &sb, Branch::Minus).unwrap();
            // equal up to rounding of the product
            assert!((ra - rb).abs() <= 1e-12 * (1.0 + ra.abs()), "table {t} E={e}: {ra} {rb}");
        }
    }
}

#![allow(dead_code)]

use dirac_msy::{PotentialChoice, PotentialParams, QuantumState, SymmetryLimit, SymmetrySpec};

pub const TABLES: [&str; 4] = [
    include_str!("../../../cli/golden/table1.csv"),
    include_str!("../../../cli/golden/table2.csv"),
    include_str!("../../../cli/golden/table3.csv"),
    include_str!("../../../cli/golden/table4.csv"),
];

#[derive(Debug, Clone, Copy)]
pub struct Row {
    pub state: QuantumState,
    pub tensor: f64,
    pub energy: f64,
}

pub fn rows(table: usize) -> Vec<Row> {
    TABLES[table - 1]
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('n'))
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            Row {
                state: QuantumState::new(f[0].parse().unwrap(), f[1].parse().unwrap()).unwrap(),
                tensor: f[2].parse().unwrap(),
                energy: f[3].parse().unwrap(),
            }
        })
        .collect()
}

/// Caption parameters of each table.
pub fn setup(table: usize, tensor: f64) -> (PotentialParams, SymmetrySpec) {
    let (limit, choice, v0) = match table {
        1 => (SymmetryLimit::Pseudospin, PotentialChoice::First, -0.2),
        2 => (SymmetryLimit::Spin, PotentialChoice::First, 0.2),
        3 => (SymmetryLimit::Pseudospin, PotentialChoice::Second, -0.2),
        4 => (SymmetryLimit::Spin, PotentialChoice::Second, 0.2),
        _ => unreachable!(),
    };
    (
        PotentialParams::new(v0, 0.1, 1.0, -2.0, 1.0, -1.0, 0.01).unwrap(),
        SymmetrySpec::new(limit, choice, 0.0, tensor, 5.0).unwrap(),
    )
}

//! `verify` suites: self-checks of the solver against the golden tables and
//! against its own identities.

use std::fmt::Write as _;

use dirac_msy::coeffs::effective_potential;
use dirac_msy::oracle::{shooting_eigenvalue, RadialModel, ShootingConfig};
use dirac_msy::spectrum::{doublet_partner, solve_energy};
use dirac_msy::susy::{partner_potentials, riccati_residual, shape_invariance_remainders};
use dirac_msy::{QuantumState, RadialGrid};

use crate::commands::solve_all;
use crate::config::RunConfig;
use crate::output::num;
use crate::{CliError, Outcome};

/// Shipped golden configurations paired with the published energies.
pub const GOLDEN: [(&str, &str, &str); 4] = [
    ("table1", include_str!("../golden/table1.conf"), include_str!("../golden/table1.csv")),
    ("table2", include_str!("../golden/table2.conf"), include_str!("../golden/table2.csv")),
    ("table3", include_str!("../golden/table3.conf"), include_str!("../golden/table3.csv")),
    ("table4", include_str!("../golden/table4.conf"), include_str!("../golden/table4.csv")),
];

pub const TABLE_TOL: f64 = 1e-6;
pub const RICCATI_TOL: f64 = 1e-8;
pub const SHAPE_TOL: f64 = 1e-8;
pub const ORACLE_TOL: f64 = 1e-4;
pub const DEGENERATE_TOL: f64 = 1e-9;
pub const SPLIT_MIN: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Tables,
    Riccati,
    ShapeInvariance,
    Oracle,
    Degeneracy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub bound: String,
    pub pass: bool,
}

impl Check {
    fn at_most(name: String, measured: f64, bound: f64) -> Self {
        Self { name, measured, bound: format!("<= {}", num(bound)), pass: measured <= bound }
    }

    fn failed(name: String, why: impl std::fmt::Display) -> Self {
        Self { name, measured: f64::NAN, bound: format!("error: {why}"), pass: false }
    }
}

/// Published `(n, κ, H, E)` rows of a golden table.
pub fn table_rows(csv: &str) -> Vec<(QuantumState, f64, f64)> {
    csv.lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('n') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            let q = QuantumState::new(f[0].parse().expect("n"), f[1].parse().expect("kappa")).expect("state");
            (q, f[2].parse().expect("H"), f[3].parse().expect("E"))
        })
        .collect()
}

pub fn golden_configs() -> Vec<(String, RunConfig)> {
    GOLDEN
        .iter()
        .map(|(name, conf, _)| (name.to_string(), RunConfig::parse(conf).expect("golden config parses")))
        .collect()
}

fn targets(cfg: Option<&RunConfig>) -> Vec<(String, RunConfig)> {
    match cfg {
        Some(c) => vec![("config".to_string(), c.clone())],
        None => golden_configs(),
    }
}

fn tag(set: &str, q: &QuantumState, h: f64) -> String {
    format!("{set} {} (n={}, kappa={}) H={}", q.label(), q.n, q.kappa, num(h))
}

pub fn tables() -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for (name, conf, csv) in GOLDEN {
        let cfg = RunConfig::parse(conf).map_err(CliError::Config)?;
        let solved = solve_all(&cfg)?;
        for (q, h, e_ref) in table_rows(csv) {
            let name = tag(name, &q, h);
            match solved.iter().find(|s| s.state == q && s.tensor == h).map(|s| &s.result) {
                Some(Ok(bs)) => out.push(Check::at_most(name, (bs.energy - e_ref).abs(), TABLE_TOL)),
                Some(Err(e)) => out.push(Check::failed(name, e)),
                None => out.push(Check::failed(name, "state missing from golden config")),
            }
        }
    }
    Ok(out)
}

pub fn riccati(cfg: Option<&RunConfig>) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for (set, c) in targets(cfg) {
        let grid = if c.has_grid() { c.grid().map_err(CliError::config)? } else { RadialGrid::default() }.nodes();
        let p = c.params().map_err(CliError::config)?;
        for s in solve_all(&c)? {
            let name = tag(&set, &s.state, s.tensor);
            let bs = match s.result {
                Ok(bs) => bs,
                Err(e) => {
                    out.push(Check::failed(name, e));
                    continue;
                }
            };
            let coeffs = bs.coefficients();
            let sp = match bs.superpotential() {
                Ok(sp) => sp,
                Err(e) => {
                    out.push(Check::failed(name, e));
                    continue;
                }
            };
            let sup = grid.iter().map(|&r| effective_potential(r, &coeffs, &p).abs()).fold(0.0, f64::max);
            let res = riccati_residual(&sp, &coeffs, &p, &grid);
            out.push(Check::at_most(name, res, RICCATI_TOL * (1.0 + sup)));
        }
    }
    Ok(out)
}

/// Partner-potential differences for `k = 0..=3` on the first configured
/// state. Evaluated on `[0.01/α, 2/α]`: closer in, `φ ~ 1/(αr)` and the
/// difference of two large squares loses the digits being tested.
pub fn shape_invariance(cfg: Option<&RunConfig>) -> Result<Vec<Check>, CliError> {
    let owned;
    let c = match cfg {
        Some(c) => c,
        None => {
            owned = golden_configs().remove(0).1;
            &owned
        }
    };
    let q =
        *c.state_list().first().ok_or_else(|| CliError::Usage("shape-invariance needs at least one state".into()))?;
    let h = c.tensor.first().copied().unwrap_or(0.0);
    let p = c.params().map_err(CliError::config)?;
    let s = c.spec(h).map_err(CliError::config)?;
    let grid = RadialGrid::uniform(0.01 / p.alpha, 2.0 / p.alpha, 2000).map_err(CliError::config)?.nodes();
    let base = match solve_energy(&q, &p, &s, c.window, c.branch).and_then(|bs| {
        let sp = bs.superpotential()?;
        Ok((bs.coefficients(), sp))
    }) {
        Ok(v) => v,
        Err(e) => return Ok(vec![Check::failed(tag("shape", &q, h), e)]),
    };
    let (coeffs, sp) = base;
    let remainders = match shape_invariance_remainders(sp.f, &coeffs, &p, 4) {
        Ok(r) => r,
        Err(e) => return Ok(vec![Check::failed(tag("shape", &q, h), e)]),
    };
    let mut out = Vec::new();
    for k in 0..4u32 {
        let pair = sp.shifted(k, &coeffs, &p).and_then(|a| Ok((a, sp.shifted(k + 1, &coeffs, &p)?)));
        let (ak, ak1) = match pair {
            Ok(v) => v,
            Err(e) => {
                out.push(Check::failed(format!("k={k}"), e));
                continue;
            }
        };
        let (plus, _) = partner_potentials(&ak, &p, &grid);
        let (_, minus) = partner_potentials(&ak1, &p, &grid);
        let diff: Vec<f64> = plus.iter().zip(&minus).map(|(a, b)| a - b).collect();
        let mean = diff.iter().sum::<f64>() / diff.len() as f64;
        let var = diff.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / diff.len() as f64;
        let r = remainders[k as usize];
        out.push(Check::at_most(
            format!("k={k} {} relative stdev of V+(a_k) - V-(a_k+1)", q.label()),
            var.sqrt() / mean.abs(),
            SHAPE_TOL,
        ));
        out.push(Check::at_most(
            format!("k={k} {} |mean - R(a_k+1)| / |R|", q.label()),
            (mean - r).abs() / r.abs(),
            SHAPE_TOL,
        ));
    }
    Ok(out)
}

/// Numerov shooting on the same approximated operator. Without a config:
/// first and last row of each golden table at both tensor strengths.
pub fn oracle(cfg: Option<&RunConfig>) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for (set, mut c) in targets(cfg) {
        if cfg.is_none() {
            let states = c.state_list();
            c.states = vec![states[0], states[states.len() - 1]];
        }
        let p = c.params().map_err(CliError::config)?;
        for s in solve_all(&c)? {
            let name = tag(&set, &s.state, s.tensor);
            let spec = c.spec(s.tensor).map_err(CliError::config)?;
            let shot = s.result.and_then(|bs| {
                let sc = ShootingConfig::around(bs.energy, &s.state, &p, &spec, RadialModel::Approximated)?;
                Ok((bs.energy, shooting_eigenvalue(&s.state, &p, &spec, &sc)?))
            });
            match shot {
                Ok((closed, shot)) => out.push(Check::at_most(name, (closed - shot).abs(), ORACLE_TOL)),
                Err(e) => out.push(Check::failed(name, e)),
            }
        }
    }
    Ok(out)
}

/// Doublet pairs (each counted once, from its κ < 0 member): degenerate
/// without tensor coupling, split with it.
pub fn degeneracy(cfg: Option<&RunConfig>) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for (set, c) in targets(cfg) {
        let p = c.params().map_err(CliError::config)?;
        for &h in &c.tensor {
            let spec = c.spec(h).map_err(CliError::config)?;
            for q in c.state_list().into_iter().filter(|q| q.kappa < 0) {
                let Ok(partner) = doublet_partner(&q, &spec) else { continue };
                let name = format!("{} <-> {} ({}:{})", tag(&set, &q, h), partner.label(), partner.n, partner.kappa);
                let pair = solve_energy(&q, &p, &spec, c.window, c.branch)
                    .and_then(|a| Ok((a.energy, solve_energy(&partner, &p, &spec, c.window, c.branch)?.energy)));
                match pair {
                    Ok((e1, e2)) => {
                        let d = (e1 - e2).abs();
                        if h == 0.0 {
                            out.push(Check::at_most(name, d, DEGENERATE_TOL));
                        } else {
                            out.push(Check {
                                name,
                                measured: d,
                                bound: format!(">= {} (intentionally split by tensor coupling)", num(SPLIT_MIN)),
                                pass: d >= SPLIT_MIN,
                            });
                        }
                    }
                    Err(e) => out.push(Check::failed(name, e)),
                }
            }
        }
    }
    Ok(out)
}

pub fn run(suite: Suite, cfg: Option<&RunConfig>) -> Result<Vec<Check>, CliError> {
    match suite {
        Suite::Tables => tables(),
        Suite::Riccati => riccati(cfg),
        Suite::ShapeInvariance => shape_invariance(cfg),
        Suite::Oracle => oracle(cfg),
        Suite::Degeneracy => degeneracy(cfg),
    }
}

pub fn report(suite: Suite, checks: &[Check]) -> Outcome {
    let mut text = String::new();
    let failures = checks.iter().filter(|c| !c.pass).count();
    for c in checks {
        let _ = writeln!(
            text,
            "{} {}: defect = {} ({})",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            num(c.measured),
            c.bound
        );
    }
    let name = clap::ValueEnum::to_possible_value(&suite).map(|v| v.get_name().to_string()).unwrap_or_default();
    let _ = writeln!(text, "{name}: {} of {} checks passed", checks.len() - failures, checks.len());
    Outcome { text, failures }
}

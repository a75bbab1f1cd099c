//! Data-producing subcommands: energies, sweep, wavefunction, centrifugal.

use dirac_msy::model::centrifugal_approx;
use dirac_msy::spectrum::solve_energy;
use dirac_msy::wavefn::WaveSpec;
use dirac_msy::{BoundState, Error, QuantumState, RadialGrid};

use crate::config::RunConfig;
use crate::output::{num, Csv};
use crate::{CliError, Outcome};

/// Default sample count of an envelope-fitted wavefunction grid.
pub const WAVE_POINTS: usize = 2001;

/// One `(state, H)` solve.
#[derive(Debug, Clone)]
pub struct Solved {
    pub state: QuantumState,
    pub tensor: f64,
    pub result: Result<BoundState, Error>,
}

fn sort_key(q: &QuantumState, h: f64) -> (u32, u32, i32, f64) {
    (q.n, q.kappa.unsigned_abs(), q.kappa.signum(), h)
}

/// Solves every configured `(state, H)` pair, sorted by `(n, |κ|, sign κ, H)`.
pub fn solve_all(cfg: &RunConfig) -> Result<Vec<Solved>, CliError> {
    let p = cfg.params().map_err(CliError::config)?;
    let mut out = Vec::new();
    for &h in &cfg.tensor {
        let s = cfg.spec(h).map_err(CliError::config)?;
        for q in cfg.state_list() {
            out.push(Solved { state: q, tensor: h, result: solve_energy(&q, &p, &s, cfg.window, cfg.branch) });
        }
    }
    out.sort_by(|a, b| sort_key(&a.state, a.tensor).partial_cmp(&sort_key(&b.state, b.tensor)).expect("finite H"));
    Ok(out)
}

fn status(e: &Error) -> &'static str {
    match e {
        Error::NoBoundState { .. } => "no-root",
        Error::Ambiguous { .. } => "ambiguous",
        _ => "error",
    }
}

fn config_meta(csv: &mut Csv, cfg: &RunConfig) {
    csv.meta_block(&cfg.serialize());
}

pub fn energies(cfg: &RunConfig, timestamp: bool) -> Result<Outcome, CliError> {
    let solved = solve_all(cfg)?;
    let mut csv = Csv::new("dirac-msy energies", timestamp);
    config_meta(&mut csv, cfg);
    csv.header(&["limit", "choice", "n", "kappa", "label", "H", "E_fm_inv", "branch", "residual", "status"]);
    let mut failures = 0;
    for s in &solved {
        let (e, branch, residual, st) = match &s.result {
            Ok(bs) => (num(bs.energy), bs.branch.to_string(), num(bs.residual), "ok"),
            Err(err) => {
                failures += 1;
                (String::new(), String::new(), String::new(), status(err))
            }
        };
        csv.row(vec![
            cfg.limit.to_string(),
            cfg.choice.to_string(),
            s.state.n.to_string(),
            s.state.kappa.to_string(),
            s.state.label(),
            num(s.tensor),
            e,
            branch,
            residual,
            st.to_string(),
        ]);
    }
    Ok(Outcome { text: csv.render(), failures })
}

/// Parameters `sweep` can scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepParam {
    Alpha,
    V0,
    V1,
    #[value(alias = "h")]
    Tensor,
    Mass,
    SymConst,
    A,
    B,
    C,
    D,
}

impl SweepParam {
    fn name(self) -> &'static str {
        match self {
            Self::Alpha => "alpha",
            Self::V0 => "v0",
            Self::V1 => "v1",
            Self::Tensor => "tensor",
            Self::Mass => "mass",
            Self::SymConst => "sym_const",
            Self::A => "a",
            Self::B => "b",
            Self::C => "c",
            Self::D => "d",
        }
    }

    fn apply(self, cfg: &mut RunConfig, v: f64) {
        match self {
            Self::Alpha => cfg.alpha = v,
            Self::V0 => cfg.v0 = v,
            Self::V1 => cfg.v1 = v,
            Self::Tensor => cfg.tensor = vec![v],
            Self::Mass => cfg.mass = v,
            Self::SymConst => cfg.sym_const = v,
            Self::A => cfg.a = v,
            Self::B => cfg.b = v,
            Self::C => cfg.c = v,
            Self::D => cfg.d = v,
        }
    }
}

/// `steps` evenly spaced values from `from` to `to` inclusive.
pub fn sweep_values(from: f64, to: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![from],
        _ => (0..steps).map(|i| from + (to - from) * i as f64 / (steps - 1) as f64).collect(),
    }
}

pub fn sweep(
    cfg: &RunConfig,
    param: SweepParam,
    from: f64,
    to: f64,
    steps: usize,
    timestamp: bool,
) -> Result<Outcome, CliError> {
    if steps == 0 || !from.is_finite() || !to.is_finite() {
        return Err(CliError::Usage("sweep needs steps >= 1 and finite bounds".into()));
    }
    let mut csv = Csv::new("dirac-msy sweep", timestamp);
    config_meta(&mut csv, cfg);
    csv.meta(&format!("sweep = {} from {} to {} in {steps} steps", param.name(), from, to));
    let mut header = vec!["param_value".to_string()];
    let mut failures = 0;
    let mut rows = Vec::new();
    for (i, v) in sweep_values(from, to, steps).into_iter().enumerate() {
        let mut c = cfg.clone();
        param.apply(&mut c, v);
        c.validate().map_err(|e| CliError::Usage(format!("{} = {v}: {e}", param.name())))?;
        let solved = solve_all(&c)?;
        if i == 0 {
            for s in &solved {
                header.push(if param == SweepParam::Tensor {
                    format!("E_n{}_k{}", s.state.n, s.state.kappa)
                } else {
                    format!("E_n{}_k{}_H{}", s.state.n, s.state.kappa, num(s.tensor))
                });
            }
        }
        let mut row = vec![num(v)];
        for s in &solved {
            match &s.result {
                Ok(bs) => row.push(num(bs.energy)),
                Err(_) => {
                    failures += 1;
                    row.push("nan".into());
                }
            }
        }
        rows.push(row);
    }
    csv.header_owned(header);
    for r in rows {
        csv.row(r);
    }
    Ok(Outcome { text: csv.render(), failures })
}

pub fn wavefunction(
    cfg: &RunConfig,
    n: u32,
    kappa: i32,
    tensor: Option<f64>,
    timestamp: bool,
) -> Result<Outcome, CliError> {
    let q = QuantumState::new(n, kappa).map_err(|e| CliError::Usage(e.to_string()))?;
    let h = tensor.or(cfg.tensor.first().copied()).unwrap_or(0.0);
    let p = cfg.params().map_err(CliError::config)?;
    let s = cfg.spec(h).map_err(CliError::config)?;
    let bs = solve_energy(&q, &p, &s, cfg.window, cfg.branch).map_err(CliError::physics)?;
    let ws = WaveSpec::new(&bs).map_err(CliError::physics)?;
    let grid = if cfg.has_grid() {
        cfg.grid().map_err(CliError::config)?
    } else {
        ws.fitted_grid(cfg.points.unwrap_or(WAVE_POINTS)).map_err(CliError::physics)?
    };
    let ws = ws.normalized(&grid).map_err(CliError::physics)?;
    let samples = ws.sample(&grid).map_err(CliError::physics)?;

    let mut csv = Csv::new("dirac-msy wavefunction", timestamp);
    config_meta(&mut csv, cfg);
    csv.meta(&format!("state = {} (n = {n}, kappa = {kappa})", q.label()));
    csv.meta(&format!("H = {}", num(h)));
    csv.meta(&format!("E_fm_inv = {}", num(bs.energy)));
    csv.meta(&format!("branch = {}", bs.branch));
    csv.meta(&format!("exp1 = {}", num(ws.exp1)));
    csv.meta(&format!("exp2 = {}", num(ws.exp2)));
    csv.meta(&format!("jacobi = P_{}^({}, {})", ws.n, num(ws.jacobi_a), num(ws.jacobi_b)));
    // 1 + 2(D/C)e^{-αr} stays in (−1, 1] only for −1 ≤ D/C < 0
    csv.meta(&format!("jacobi_argument_in_unit_interval = {}", p.ratio() >= -1.0));
    csv.meta(&format!("grid = {} .. {} fm, {} points", num(grid.r_min), num(grid.r_max), grid.points));
    csv.meta("normalization = integral of F^2 + G^2 dr = 1 (Simpson)");
    csv.header(&["r", "F", "G"]);
    for smp in samples {
        csv.row(vec![num(smp.r), num(smp.f), num(smp.g)]);
    }
    Ok(Outcome { text: csv.render(), failures: 0 })
}

/// Exact `1/r²` against its Pekeris-type replacement.
pub fn centrifugal(cfg: &RunConfig, timestamp: bool) -> Result<Outcome, CliError> {
    let grid = if cfg.has_grid() {
        cfg.grid().map_err(CliError::config)?
    } else {
        RadialGrid::uniform(0.5, 100.0, cfg.points.unwrap_or(200)).map_err(CliError::config)?
    };
    let mut csv = Csv::new("dirac-msy centrifugal", timestamp);
    csv.meta(&format!("alpha = {}", cfg.alpha));
    csv.meta(&format!("c = {}", cfg.c));
    csv.meta(&format!("d = {}", cfg.d));
    csv.header(&["r", "alpha_r", "inverse_square", "approximation", "relative_error"]);
    for r in grid.nodes() {
        let exact = 1.0 / (r * r);
        let approx = centrifugal_approx(r, cfg.alpha, cfg.c, cfg.d).map_err(CliError::physics)?;
        csv.row(vec![num(r), num(cfg.alpha * r), num(exact), num(approx), num(approx / exact - 1.0)]);
    }
    Ok(Outcome { text: csv.render(), failures: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_grid() {
        assert_eq!(sweep_values(1.0, 2.0, 1), vec![1.0]);
        assert_eq!(sweep_values(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn sorted_by_n_then_kappa_then_h() {
        let cfg =
            RunConfig::parse("states = 1:-2, 0:2, 1:-1, 0:-2, 0:3\ntensor = 0.5, 0\nlimit = spin\nv0 = 0.2").unwrap();
        let keys: Vec<(u32, i32, f64)> =
            solve_all(&cfg).unwrap().iter().map(|s| (s.state.n, s.state.kappa, s.tensor)).collect();
        assert_eq!(
            keys,
            vec![
                (0, -2, 0.0),
                (0, -2, 0.5),
                (0, 2, 0.0),
                (0, 2, 0.5),
                (0, 3, 0.0),
                (0, 3, 0.5),
                (1, -1, 0.0),
                (1, -1, 0.5),
                (1, -2, 0.0),
                (1, -2, 0.5),
            ]
        );
    }

    #[test]
    fn empty_state_list_gives_header_only() {
        let cfg = RunConfig::parse("n_list =").unwrap();
        let out = energies(&cfg, false).unwrap();
        assert_eq!(out.failures, 0);
        assert!(out.text.lines().last().unwrap().starts_with("limit,choice"));
    }
}

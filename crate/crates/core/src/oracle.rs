//! Numerov shooting on the radial Schrödinger-like equation `u'' = Q(r; E) u`.
//!
//! Used as an arbiter for the closed-form spectrum. Two versions of `Q` are
//! available: the approximated one built from the effective coefficients,
//! and one rebuilt from the exact `1/r²` and `1/r` terms.

use crate::coeffs::{effective_coefficients, effective_potential};
use crate::error::{Error, Result};
use crate::model::{
    delta_potential, sigma_potential, PotentialParams, QuantumState, RadialGrid, SymmetryLimit, SymmetrySpec,
};
use crate::spectrum::solve_energy;
use crate::spectrum::BranchPolicy;
use crate::wavefn::count_sign_changes;

/// Values above this trigger a rescale of the integrated solution.
const RESCALE_AT: f64 = 1e150;
/// WKB action that each forbidden region of the shooting grid must carry.
const WKB_ACTION: f64 = 40.0;
/// Half-width of the bracket placed around a closed-form energy (fm⁻¹).
pub const BRACKET_HALF_WIDTH: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// From `r_min`, seeded with `u(r_min) = 0`.
    Outward,
    /// From `r_max`, seeded with `u(r_max) = 0`.
    Inward,
}

/// Which radial operator to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RadialModel {
    /// `V_eff` from the effective coefficients.
    #[default]
    Approximated,
    /// Exact centrifugal and Yukawa terms.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    pub grid: RadialGrid,
    pub match_point: f64,
    pub energy_bracket: (f64, f64),
    pub node_target: u32,
    pub tol: f64,
    pub model: RadialModel,
}

impl ShootingConfig {
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        self.grid.step()?;
        if !(self.grid.r_min < self.match_point && self.match_point < self.grid.r_max) {
            return Err(Error::InvalidParameter(format!(
                "match point {} outside grid [{}, {}]",
                self.match_point, self.grid.r_min, self.grid.r_max
            )));
        }
        if !(self.tol > 0.0) || !(self.energy_bracket.0 < self.energy_bracket.1) {
            return Err(Error::InvalidParameter("need tol > 0 and a non-empty energy bracket".into()));
        }
        Ok(())
    }

    /// Configuration for state `q` around `centre`: bracket `centre ± 0.05`,
    /// grid spanning the classically allowed region plus a WKB action of 40
    /// on each side, match point at the bottom of the well.
    pub fn around(
        centre: f64,
        q: &QuantumState,
        p: &PotentialParams,
        s: &SymmetrySpec,
        model: RadialModel,
    ) -> Result<Self> {
        let qf = radial_q(model, centre, q, p, s);
        let (grid, match_point) = wkb_grid(&qf, p.alpha)?;
        Ok(Self {
            grid,
            match_point,
            energy_bracket: (centre - BRACKET_HALF_WIDTH, centre + BRACKET_HALF_WIDTH),
            node_target: q.radial_degree(s.limit),
            tol: 1e-10,
            model,
        })
    }

    /// [`ShootingConfig::around`] the closed-form energy, or the centre of
    /// the default window when the closed form has no root.
    pub fn for_state(q: &QuantumState, p: &PotentialParams, s: &SymmetrySpec, model: RadialModel) -> Result<Self> {
        let centre = match solve_energy(q, p, s, None, BranchPolicy::Auto) {
            Ok(bs) => bs.energy,
            Err(_) => {
                let (lo, hi) = crate::spectrum::default_window(s);
                0.5 * (lo + hi)
            }
        };
        Self::around(centre, q, p, s, model)
    }
}

/// `Q(r; E)` such that the solved component obeys `u'' = Q u`.
pub fn radial_q<'a>(
    model: RadialModel,
    e: f64,
    q: &'a QuantumState,
    p: &'a PotentialParams,
    s: &'a SymmetrySpec,
) -> impl Fn(f64) -> f64 + 'a {
    let c = effective_coefficients(e, p, s, q);
    let k = q.kappa as f64 + s.tensor;
    move |r| match model {
        RadialModel::Approximated => effective_potential(r, &c, p) - c.eff_energy,
        RadialModel::Exact => match s.limit {
            SymmetryLimit::Pseudospin => {
                let m = s.mass - e + s.sym_const;
                let delta = delta_potential(r, p, s.choice, s.tail).unwrap_or(f64::INFINITY);
                k * (k - 1.0) / (r * r) - m * delta + m * (s.mass + e)
            }
            SymmetryLimit::Spin => {
                let m = s.mass + e - s.sym_const;
                let sigma = sigma_potential(r, p, s.choice, s.tail).unwrap_or(f64::INFINITY);
                k * (k + 1.0) / (r * r) + m * sigma + m * (s.mass - e)
            }
        },
    }
}

/// Grid for a bound state of `qf`, and the bottom of the well as match point.
fn wkb_grid(qf: &impl Fn(f64) -> f64, alpha: f64) -> Result<(RadialGrid, f64)> {
    let floor = 1e-3;
    let far = 200.0 / alpha;
    let scan = 20_000;
    let ratio = (far / floor).ln() / scan as f64;
    let rs: Vec<f64> = (0..=scan).map(|i| floor * (i as f64 * ratio).exp()).collect();
    let qs: Vec<f64> = rs.iter().map(|&r| qf(r)).collect();
    let allowed: Vec<usize> = (0..rs.len()).filter(|&i| qs[i] < 0.0).collect();
    let (Some(&first), Some(&last)) = (allowed.first(), allowed.last()) else {
        return Err(Error::Bracket { lo: floor, hi: far });
    };
    let bottom = allowed.iter().copied().min_by(|&a, &b| qs[a].total_cmp(&qs[b])).unwrap_or(first);
    let match_point = if bottom > first && bottom < last { rs[bottom] } else { std::f64::consts::LN_2 / alpha };

    let mut action = 0.0;
    let mut lo = first;
    while lo > 0 && action < WKB_ACTION {
        action += qs[lo - 1].max(0.0).sqrt() * (rs[lo] - rs[lo - 1]);
        lo -= 1;
    }
    let mut action = 0.0;
    let mut hi = last;
    while hi + 1 < rs.len() && action < WKB_ACTION {
        action += qs[hi + 1].max(0.0).sqrt() * (rs[hi + 1] - rs[hi]);
        hi += 1;
    }
    let (r_lo, r_hi) = (rs[lo], rs[hi]);
    let q_max = qs[lo..=hi].iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let length = r_hi - r_lo;
    let h = (length / 8000.0).min(0.5 / q_max.sqrt());
    let points = ((length / h).ceil() as usize + 1).min(400_001);
    let grid = RadialGrid::uniform(r_lo, r_hi, points)?;
    let match_point = match_point.clamp(r_lo + 2.0 * h, r_hi - 2.0 * h);
    Ok((grid, match_point))
}

/// Integrates `u'' = q(r) u` across `grid` with Numerov's scheme.
///
/// The starting boundary value is zero and the next one is the step `h`.
/// The result is rescaled by positive factors whenever it exceeds
/// `1e150`, so only its shape and sign pattern are meaningful.
pub fn numerov_integrate(q: impl Fn(f64) -> f64, grid: &RadialGrid, direction: Direction) -> Result<Vec<f64>> {
    let h = grid.step()?;
    let nodes = grid.nodes();
    let n = nodes.len();
    let g: Vec<f64> = nodes.iter().map(|&r| h * h * q(r) / 12.0).collect();
    let mut u = vec![0.0; n];
    if n < 2 {
        return Ok(u);
    }
    let order: Vec<usize> = match direction {
        Direction::Outward => (0..n).collect(),
        Direction::Inward => (0..n).rev().collect(),
    };
    // Summed form: w = f u, w_{i+1} − w_i = (w_i − w_{i−1}) + h² q_i u_i.
    // Carrying the increment keeps the small h² q correction from being
    // swamped by rounding.
    u[order[1]] = h;
    let mut w = (1.0 - g[order[1]]) * h;
    let mut dw = w - (1.0 - g[order[0]]) * u[order[0]];
    for i in 1..n - 1 {
        let (b, c) = (order[i], order[i + 1]);
        dw += 12.0 * g[b] * u[b];
        w += dw;
        let next = w / (1.0 - g[c]);
        if !next.is_finite() {
            return Err(Error::InvalidParameter("Numerov integration overflowed".into()));
        }
        u[c] = next;
        if next.abs() > RESCALE_AT {
            w /= RESCALE_AT;
            dw /= RESCALE_AT;
            for &j in &order[..=i + 1] {
                u[j] /= RESCALE_AT;
            }
        }
    }
    Ok(u)
}

struct Shot {
    outward: Vec<f64>,
    inward: Vec<f64>,
    matched: usize,
}

impl Shot {
    fn run(q: impl Fn(f64) -> f64 + Copy, cfg: &ShootingConfig) -> Result<Self> {
        let h = cfg.grid.step()?;
        let matched = ((cfg.match_point - cfg.grid.r_min) / h).round() as usize;
        Ok(Self {
            outward: numerov_integrate(q, &cfg.grid, Direction::Outward)?,
            inward: numerov_integrate(q, &cfg.grid, Direction::Inward)?,
            matched,
        })
    }

    /// Casoratian `u_out(m) u_in(m+1) − u_out(m+1) u_in(m)`, normalized by
    /// the magnitudes at the match point so its scale is `O(h · Δ(log u)')`.
    fn mismatch(&self) -> f64 {
        let m = self.matched;
        let (o0, o1, i0, i1) = (self.outward[m], self.outward[m + 1], self.inward[m], self.inward[m + 1]);
        let scale = (o0.abs() + o1.abs()) * (i0.abs() + i1.abs());
        (o0 * i1 - o1 * i0) / scale
    }

    /// Eigenvalues below `E` for the Dirichlet problem on the grid.
    fn level_count(&self) -> u32 {
        count_sign_changes(&self.outward[1..], 0.0)
    }

    /// Outward piece up to the match point joined to the scaled inward piece.
    fn joined(&self) -> Vec<f64> {
        let m = self.matched;
        let k = if self.inward[m] != 0.0 { self.outward[m] / self.inward[m] } else { 1.0 };
        self.outward[..=m].iter().copied().chain(self.inward[m + 1..].iter().map(|v| v * k)).collect()
    }
}

fn shoot(
    model: RadialModel,
    e: f64,
    q: &QuantumState,
    p: &PotentialParams,
    s: &SymmetrySpec,
    cfg: &ShootingConfig,
) -> Result<Shot> {
    let qf = radial_q(model, e, q, p, s);
    Shot::run(&qf, cfg)
}

/// Normalized matching defect at `E`: zero at an eigenvalue of `cfg.model`.
pub fn matching_defect(
    e: f64,
    q: &QuantumState,
    p: &PotentialParams,
    s: &SymmetrySpec,
    cfg: &ShootingConfig,
) -> Result<f64> {
    cfg.validate()?;
    Ok(shoot(cfg.model, e, q, p, s, cfg)?.mismatch())
}

/// Eigenvalue with `cfg.node_target` nodes inside `cfg.energy_bracket`.
///
/// Bisection on the level count isolates the state, bisection on the
/// matching defect then refines it to `cfg.tol`.
pub fn shooting_eigenvalue(
    q: &QuantumState,
    p: &PotentialParams,
    s: &SymmetrySpec,
    cfg: &ShootingConfig,
) -> Result<f64> {
    cfg.validate()?;
    let run = |e: f64| shoot(cfg.model, e, q, p, s, cfg);
    let above = |e: f64| -> Result<bool> { Ok(run(e)?.level_count() > cfg.node_target) };
    let (mut lo, mut hi) = cfg.energy_bracket;
    let (lo_above, hi_above) = (above(lo)?, above(hi)?);
    if lo_above == hi_above {
        return Err(Error::Bracket { lo, hi });
    }
    // Isolate one level: `lo` side keeps its flag, `hi` side keeps the other.
    let isolate = 1e-3 * (hi - lo);
    while hi - lo > isolate {
        let mid = 0.5 * (lo + hi);
        if above(mid)? == lo_above {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let defect = |e: f64| run(e).map(|sh| sh.mismatch());
    let mut d_lo = defect(lo)?;
    let d_hi = defect(hi)?;
    if d_lo * d_hi > 0.0 {
        return Err(Error::Bracket { lo, hi });
    }
    while hi - lo > cfg.tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let d = defect(mid)?;
        if d == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if d * d_lo < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            d_lo = d;
        }
    }
    let e = 0.5 * (lo + hi);
    let found = count_sign_changes(&run(e)?.joined(), 1e-10);
    if found != cfg.node_target {
        return Err(Error::WrongState { expected: cfg.node_target, found });
    }
    Ok(e)
}

/// Energies of the same state with approximated and with exact terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproximationReport {
    pub approximated: f64,
    pub exact: f64,
}

impl ApproximationReport {
    pub fn gap(&self) -> f64 {
        self.exact - self.approximated
    }
}

/// Solves the shooting problem with `cfg` for the approximated operator and
/// with a rebuilt configuration for the exact one.
pub fn approximation_error_report(
    q: &QuantumState,
    p: &PotentialParams,
    s: &SymmetrySpec,
    cfg: &ShootingConfig,
) -> Result<ApproximationReport> {
    let approx_cfg = ShootingConfig { model: RadialModel::Approximated, ..*cfg };
    let approximated = shooting_eigenvalue(q, p, s, &approx_cfg)?;
    let exact_cfg = ShootingConfig {
        energy_bracket: cfg.energy_bracket,
        tol: cfg.tol,
        ..ShootingConfig::around(approximated, q, p, s, RadialModel::Exact)?
    };
    let exact = shooting_eigenvalue(q, p, s, &exact_cfg)?;
    Ok(ApproximationReport { approximated, exact })
}

//! Energy eigenvalues from the self-consistent closed-form condition
//! `Ẽ(E) = cst(E) − w(a_n(E))²`, plus the special-case parameter mappings.

use std::str::FromStr;

use crate::coeffs::{effective_coefficients, EffectiveCoefficients};
use crate::error::{Error, Result};
use crate::model::{PotentialParams, QuantumState, SymmetryLimit, SymmetrySpec};
use crate::susy::{
    closed_form_effective_energy, ground_parameter, shifted_parameter, solve_superpotential, superpotential_offset,
    Branch, SuperpotentialParams,
};

/// Spacing of the sign-change scan (fm⁻¹).
pub const SCAN_STEP: f64 = 1e-3;
/// Bisection stops once the bracket is this narrow (fm⁻¹).
pub const ENERGY_TOL: f64 = 1e-12;
/// Half-width of the default search window around ±M (fm⁻¹).
pub const WINDOW_HALF_WIDTH: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchPolicy {
    /// Try both branches and keep the normalizable root.
    #[default]
    Auto,
    Fixed(Branch),
}

impl FromStr for BranchPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "auto" => Ok(Self::Auto),
            "plus" => Ok(Self::Fixed(Branch::Plus)),
            "minus" => Ok(Self::Fixed(Branch::Minus)),
            other => Err(Error::InvalidParameter(format!("unknown branch policy '{other}'"))),
        }
    }
}

impl std::fmt::Display for BranchPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Auto => f.write_str("auto"),
            Self::Fixed(b) => b.fmt(f),
        }
    }
}

/// A converged eigenvalue together with everything needed to rebuild it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub energy: f64,
    pub state: QuantumState,
    pub spec: SymmetrySpec,
    pub params: PotentialParams,
    pub branch: Branch,
    /// `eigenvalue_residual` at `energy` (fm⁻²).
    pub residual: f64,
}

impl BoundState {
    pub fn coefficients(&self) -> EffectiveCoefficients {
        effective_coefficients(self.energy, &self.params, &self.spec, &self.state)
    }

    pub fn degree(&self) -> u32 {
        self.state.radial_degree(self.spec.limit)
    }

    pub fn superpotential(&self) -> Result<SuperpotentialParams> {
        solve_superpotential(&self.coefficients(), &self.params, self.branch)
    }
}

/// `Ẽ(E) − Ẽ_n(E)`; `None` where no real superpotential exists at `E`.
pub fn eigenvalue_residual(
    e: f64,
    q: &QuantumState,
    p: &PotentialParams,
    s: &SymmetrySpec,
    branch: Branch,
) -> Option<f64> {
    let c = effective_coefficients(e, p, s, q);
    let n = q.radial_degree(s.limit);
    closed_form_effective_energy(n, &c, p, branch).ok().map(|en| c.eff_energy - en).filter(|r| r.is_finite())
}

/// Exponents of the closed-form state at `E` on `branch`: the decay
/// exponent `w(a_n)/α` on `e^{-αr}` and the exponent `a₀ C/(α D)` on the
/// Möbius factor.
pub fn branch_exponents(
    e: f64,
    q: &QuantumState,
    p: &PotentialParams,
    s: &SymmetrySpec,
    branch: Branch,
) -> Option<(f64, f64)> {
    let c = effective_coefficients(e, p, s, q);
    let a0 = ground_parameter(&c, p, branch).ok()?;
    let an = shifted_parameter(a0, q.radial_degree(s.limit), p);
    if an == 0.0 {
        return None;
    }
    let w = superpotential_offset(an, &c, p);
    Some((w / p.alpha, a0 / (p.alpha * p.ratio())))
}

/// Both exponents give a state vanishing at the origin and at infinity.
pub fn is_normalizable(e: f64, q: &QuantumState, p: &PotentialParams, s: &SymmetrySpec, branch: Branch) -> bool {
    matches!(branch_exponents(e, q, p, s, branch), Some((decay, origin)) if decay > 0.0 && origin > 0.5)
}

/// `(−M − 2, −M + 2)` for pseudospin, `(M − 2, M + 2)` for spin.
pub fn default_window(s: &SymmetrySpec) -> (f64, f64) {
    let centre = match s.limit {
        SymmetryLimit::Pseudospin => -s.mass,
        SymmetryLimit::Spin => s.mass,
    };
    (centre - WINDOW_HALF_WIDTH, centre + WINDOW_HALF_WIDTH)
}

/// All roots of the residual on `branch` inside `window`, bracketed on a
/// [`SCAN_STEP`] grid and bisected to [`ENERGY_TOL`]. Sign flips across
/// poles are discarded.
pub fn residual_roots(
    q: &QuantumState,
    p: &PotentialParams,
    s: &SymmetrySpec,
    window: (f64, f64),
    branch: Branch,
) -> Vec<f64> {
    let (lo, hi) = window;
    let f = |e: f64| eigenvalue_residual(e, q, p, s, branch);
    let steps = ((hi - lo) / SCAN_STEP).ceil().max(1.0) as usize;
    let mut roots = Vec::new();
    let mut prev = (lo, f(lo));
    for i in 1..=steps {
        let e = if i == steps { hi } else { lo + i as f64 * SCAN_STEP };
        let cur = (e, f(e));
        if let ((a, Some(fa)), (b, Some(fb))) = (prev, cur) {
            if fa == 0.0 {
                roots.push(a);
            } else if fa * fb < 0.0 {
                if let Some(root) = bisect(&f, a, b, fa) {
                    let scale = fa.abs().max(fb.abs());
                    if f(root).is_some_and(|fr| fr.abs() <= 1e-3 * scale) {
                        roots.push(root);
                    }
                }
            }
        }
        prev = cur;
    }
    roots
}

fn bisect(f: &impl Fn(f64) -> Option<f64>, mut a: f64, mut b: f64, mut fa: f64) -> Option<f64> {
    while b - a > ENERGY_TOL {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Some(mid);
        }
        if fa * fm < 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    Some(0.5 * (a + b))
}

/// Finds the physical eigenvalue of `q` in `window` (or [`default_window`]).
///
/// Roots on non-normalizable branches are dropped. Under
/// [`BranchPolicy::Auto`] a minus-branch root wins a tie between branches.
pub fn solve_energy(
    q: &QuantumState,
    p: &PotentialParams,
    s: &SymmetrySpec,
    window: Option<(f64, f64)>,
    policy: BranchPolicy,
) -> Result<BoundState> {
    p.validate()?;
    s.validate()?;
    let window = window.unwrap_or_else(|| default_window(s));
    if !(window.0 < window.1) {
        return Err(Error::InvalidParameter(format!("empty energy window {window:?}")));
    }
    let branches: &[Branch] = match policy {
        BranchPolicy::Auto => &Branch::BOTH,
        BranchPolicy::Fixed(Branch::Plus) => &[Branch::Plus],
        BranchPolicy::Fixed(Branch::Minus) => &[Branch::Minus],
    };
    let forbidden = s.forbidden_energy();
    let mut candidates: Vec<(f64, Branch)> = Vec::new();
    for &branch in branches {
        for e in residual_roots(q, p, s, window, branch) {
            if (e - forbidden).abs() > 1e-9 && is_normalizable(e, q, p, s, branch) {
                candidates.push((e, branch));
            }
        }
    }
    if candidates.len() > 1 && policy == BranchPolicy::Auto {
        let minus: Vec<_> = candidates.iter().copied().filter(|c| c.1 == Branch::Minus).collect();
        if !minus.is_empty() {
            candidates = minus;
        }
    }
    match candidates.as_slice() {
        [] => Err(Error::NoBoundState { state: q.to_string(), lo: window.0, hi: window.1 }),
        [(e, branch)] => Ok(BoundState {
            energy: *e,
            state: *q,
            spec: *s,
            params: *p,
            branch: *branch,
            residual: eigenvalue_residual(*e, q, p, s, *branch).unwrap_or(f64::NAN),
        }),
        many => Err(Error::Ambiguous { state: q.to_string(), candidates: many.iter().map(|c| c.0).collect() }),
    }
}

/// The other member of the (pseudo)spin doublet.
///
/// Pseudospin: `(n, −l̃) ↔ (n−1, l̃+1)`. Spin: `(n, −l−1) ↔ (n, l)`.
pub fn doublet_partner(q: &QuantumState, s: &SymmetrySpec) -> Result<QuantumState> {
    let none = || Error::NoPartner(q.to_string());
    let (n, k) = (q.n, q.kappa);
    match s.limit {
        SymmetryLimit::Pseudospin if k < 0 => {
            let n = n.checked_sub(1).ok_or_else(none)?;
            QuantumState::new(n, 1 - k)
        }
        SymmetryLimit::Pseudospin => {
            if k == 1 {
                return Err(none());
            }
            QuantumState::new(n + 1, 1 - k)
        }
        SymmetryLimit::Spin => {
            let partner = -k - 1;
            if partner == 0 {
                return Err(none());
            }
            QuantumState::new(n, partner)
        }
    }
}

/// Möbius-square parameters reproducing the Deng–Fan potential
/// `De (1 − (1+b) e^{−αr})² / (1 − e^{−αr})²` (gauge `A = 1`).
pub fn deng_fan_map(de: f64, b: f64, alpha: f64) -> Result<PotentialParams> {
    if !(de > 0.0) || !(b > -1.0) {
        return Err(Error::InvalidParameter(format!("Deng-Fan needs De > 0 and b > -1, got De = {de}, b = {b}")));
    }
    PotentialParams::new(de, 0.0, 1.0, -(1.0 + b), 1.0, -1.0, alpha)
}

/// Pure Yukawa (first choice) or quasi-Yukawa (second choice): `V0 = 0`.
pub fn yukawa_reduction(p: &PotentialParams) -> PotentialParams {
    PotentialParams { v0: 0.0, ..*p }
}

/// Eigenvalues along a sequence of screening parameters, for studying the
/// `α → 0` Coulomb-like limit.
pub fn coulomb_trend_check(
    p: &PotentialParams,
    s: &SymmetrySpec,
    q: &QuantumState,
    alphas: &[f64],
) -> Result<Vec<f64>> {
    alphas
        .iter()
        .map(|&alpha| {
            let pa = PotentialParams::new(p.v0, p.v1, p.a, p.b, p.c, p.d, alpha)?;
            solve_energy(q, &pa, s, None, BranchPolicy::Auto).map(|b| b.energy)
        })
        .collect()
}

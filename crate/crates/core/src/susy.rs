//! Superpotential, partner potentials and shape invariance for the
//! Möbius-type effective potential.
//!
//! With `y = e^{-αr}` and `ρ = D/C` the superpotential is
//! `φ(r) = a y / (1 + ρy) + w(a)` where
//!
//! ```text
//! w(a) = (quad C² − cst D² − a² C²) / (2 C D a)
//! ```
//!
//! Matching the `y⁰, y¹, y²` coefficients of `φ² − φ' = V_eff − Ẽ₀` fixes
//! `a` through `a² − αρ a − (quad + ρ² cst − ρ lin) = 0`; the linear
//! coefficient enters only here, not in `w`. The shape-invariant map is
//! `a ↦ a + αρ`, so `Ẽ_n = cst − w(a₀ + nαρ)²`.

use crate::coeffs::{effective_potential, EffectiveCoefficients};
use crate::error::{Error, Result};
use crate::model::PotentialParams;

/// Sign in front of the square root of the superpotential quadratic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Minus, Branch::Plus];

    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.keyword())
    }
}

/// `φ(r) = f e^{-αr} / (1 + (D/C) e^{-αr}) + g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpotentialParams {
    pub f: f64,
    pub g: f64,
    pub branch: Branch,
}

/// `α²D² + 4 cst D² + 4 quad C² − 4 lin C D`.
pub fn discriminant(c: &EffectiveCoefficients, p: &PotentialParams) -> f64 {
    let (cc, d, al) = (p.c, p.d, p.alpha);
    al * al * d * d + 4.0 * c.cst * d * d + 4.0 * c.quad * cc * cc - 4.0 * c.lin * cc * d
}

/// The constant `w(a)` of the superpotential whose exponential coefficient is `a`.
pub fn superpotential_offset(a: f64, c: &EffectiveCoefficients, p: &PotentialParams) -> f64 {
    let (cc, d) = (p.c, p.d);
    (-a * a * cc * cc - c.cst * d * d + c.quad * cc * cc) / (2.0 * cc * d * a)
}

/// Root `a₀` of the superpotential quadratic on the requested branch.
pub fn ground_parameter(c: &EffectiveCoefficients, p: &PotentialParams, branch: Branch) -> Result<f64> {
    let disc = discriminant(c, p);
    if !(disc >= 0.0) {
        return Err(Error::NoRealSuperpotential { discriminant: disc });
    }
    Ok(p.alpha * p.d / (2.0 * p.c) + branch.sign() * disc.sqrt() / (2.0 * p.c))
}

/// `a_n = a₀ + n α D / C`.
pub fn shifted_parameter(a0: f64, n: u32, p: &PotentialParams) -> f64 {
    a0 + n as f64 * p.alpha * p.ratio()
}

pub fn solve_superpotential(
    c: &EffectiveCoefficients,
    p: &PotentialParams,
    branch: Branch,
) -> Result<SuperpotentialParams> {
    let f = ground_parameter(c, p, branch)?;
    if f == 0.0 {
        return Err(Error::DegenerateParameter { index: 0 });
    }
    Ok(SuperpotentialParams { f, g: superpotential_offset(f, c, p), branch })
}

impl SuperpotentialParams {
    /// Superpotential of the `k`-th member of the shape-invariant hierarchy.
    pub fn shifted(&self, k: u32, c: &EffectiveCoefficients, p: &PotentialParams) -> Result<Self> {
        let f = shifted_parameter(self.f, k, p);
        if f == 0.0 {
            return Err(Error::DegenerateParameter { index: k });
        }
        Ok(Self { f, g: superpotential_offset(f, c, p), branch: self.branch })
    }
}

pub fn superpotential(r: f64, sp: &SuperpotentialParams, p: &PotentialParams) -> f64 {
    let y = (-p.alpha * r).exp();
    sp.f * y / p.mobius_factor(r) + sp.g
}

/// `φ'(r) = −α f e^{-αr} / (1 + (D/C) e^{-αr})²`.
pub fn superpotential_derivative(r: f64, sp: &SuperpotentialParams, p: &PotentialParams) -> f64 {
    let y = (-p.alpha * r).exp();
    let m = p.mobius_factor(r);
    -p.alpha * sp.f * y / (m * m)
}

/// Ground effective energy `Ẽ₀ = cst − g²`.
pub fn ground_effective_energy(sp: &SuperpotentialParams, c: &EffectiveCoefficients) -> f64 {
    c.cst - sp.g * sp.g
}

/// `max_grid |φ² − φ' − V_eff + Ẽ₀|`.
pub fn riccati_residual(
    sp: &SuperpotentialParams,
    c: &EffectiveCoefficients,
    p: &PotentialParams,
    grid: &[f64],
) -> f64 {
    let e0 = ground_effective_energy(sp, c);
    grid.iter()
        .map(|&r| {
            let phi = superpotential(r, sp, p);
            let dphi = superpotential_derivative(r, sp, p);
            (phi * phi - dphi - effective_potential(r, c, p) + e0).abs()
        })
        .fold(0.0, f64::max)
}

/// `(V₊, V₋) = (φ² + φ', φ² − φ')` on the grid.
pub fn partner_potentials(sp: &SuperpotentialParams, p: &PotentialParams, grid: &[f64]) -> (Vec<f64>, Vec<f64>) {
    grid.iter()
        .map(|&r| {
            let phi = superpotential(r, sp, p);
            let dphi = superpotential_derivative(r, sp, p);
            (phi * phi + dphi, phi * phi - dphi)
        })
        .unzip()
}

/// `R(a_k) = w(a_{k−1})² − w(a_k)²` for `k = 1..=n_max`.
pub fn shape_invariance_remainders(
    a0: f64,
    c: &EffectiveCoefficients,
    p: &PotentialParams,
    n_max: u32,
) -> Result<Vec<f64>> {
    let mut prev = offset_checked(a0, 0, c, p)?;
    let mut out = Vec::with_capacity(n_max as usize);
    for k in 1..=n_max {
        let w = offset_checked(shifted_parameter(a0, k, p), k, c, p)?;
        out.push(prev * prev - w * w);
        prev = w;
    }
    Ok(out)
}

fn offset_checked(a: f64, index: u32, c: &EffectiveCoefficients, p: &PotentialParams) -> Result<f64> {
    if a == 0.0 {
        return Err(Error::DegenerateParameter { index });
    }
    Ok(superpotential_offset(a, c, p))
}

/// `Ẽ_n = cst − w(a_n)²`, the closed-form effective eigenvalue of level `n`.
pub fn closed_form_effective_energy(
    n: u32,
    c: &EffectiveCoefficients,
    p: &PotentialParams,
    branch: Branch,
) -> Result<f64> {
    let a0 = ground_parameter(c, p, branch)?;
    let w = offset_checked(shifted_parameter(a0, n, p), n, c, p)?;
    Ok(c.cst - w * w)
}

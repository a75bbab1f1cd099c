//! Effective-potential coefficients of the Schrödinger-like radial equation.
//!
//! After the Pekeris-type replacement of `1/r²` and `1/r`, every
//! symmetry/choice combination reduces to
//!
//! ```text
//! -u'' + V_eff(r) u = Ẽ u,
//! V_eff = (quad e^{-2αr} + lin e^{-αr} + cst) / (1 + (D/C) e^{-αr})²
//! ```
//!
//! with `quad`, `lin`, `cst` affine in the trial energy `E` and `Ẽ`
//! quadratic in it. The Yukawa factor `e^{-αr}/r` is replaced by
//! `e^{-αr} Cα/(C + D e^{-αr})`.

use crate::model::{PotentialChoice, PotentialParams, QuantumState, QuasiTail, SymmetryLimit, SymmetrySpec};

/// Numerator coefficients of `V_eff` and the effective energy, evaluated at `trial_energy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveCoefficients {
    /// Coefficient of `e^{-2αr}` (fm⁻²).
    pub quad: f64,
    /// Coefficient of `e^{-αr}` (fm⁻²).
    pub lin: f64,
    /// Constant term (fm⁻²).
    pub cst: f64,
    /// Ẽ (fm⁻²).
    pub eff_energy: f64,
    /// The E these were evaluated at (fm⁻¹).
    pub trial_energy: f64,
}

/// Terms shared by every variant: the Möbius-square part scaled by `coupling`
/// and the tensor-shifted centrifugal constant.
fn mobius_part(e: f64, coupling: f64, p: &PotentialParams, centrifugal: f64, eff_energy: f64) -> EffectiveCoefficients {
    let c2 = p.c * p.c;
    EffectiveCoefficients {
        quad: p.v0 * p.b * p.b / c2 * coupling,
        lin: 2.0 * p.a * p.b * p.v0 / c2 * coupling,
        cst: centrifugal * p.alpha * p.alpha + p.v0 * p.a * p.a / c2 * coupling,
        eff_energy,
        trial_energy: e,
    }
}

/// Adds the approximated `-V1 · strength · e^{-αr}/r` contribution, where
/// `strength` multiplies the tail in the potential term of the equation.
fn add_yukawa(c: &mut EffectiveCoefficients, strength: f64, p: &PotentialParams) {
    // e^{-αr}/r ≈ α y (1 + ρy) / (1 + ρy)^2
    c.lin += strength * p.v1 * p.alpha;
    c.quad += strength * p.v1 * p.alpha * p.ratio();
}

/// Adds `e^{-2αr}/r² ≈ α² y² / (1 + ρy)²` with the given weight.
fn add_yukawa_squared(c: &mut EffectiveCoefficients, strength: f64, p: &PotentialParams) {
    c.quad += strength * p.v1 * p.alpha * p.alpha;
}

/// Pseudospin limit, Yukawa tail.
pub fn coeffs_pseudospin_first(
    e: f64,
    p: &PotentialParams,
    s: &SymmetrySpec,
    q: &QuantumState,
) -> EffectiveCoefficients {
    let (m, cps) = (s.mass, s.sym_const);
    // Δ enters as −Δ(M − E + C_ps) = Δ(E − M − C_ps).
    let coupling = e - m - cps;
    let eff = -m * m - m * cps + e * e - e * cps;
    let mut c = mobius_part(e, coupling, p, q.centrifugal_factor(SymmetryLimit::Pseudospin, s.tensor), eff);
    add_yukawa(&mut c, -coupling, p);
    c
}

/// Spin limit, Yukawa tail.
pub fn coeffs_spin_first(e: f64, p: &PotentialParams, s: &SymmetrySpec, q: &QuantumState) -> EffectiveCoefficients {
    let (m, cs) = (s.mass, s.sym_const);
    // Σ enters as Σ(M + E − C_s).
    let coupling = m + e - cs;
    let eff = -m * m + m * cs + e * e - e * cs;
    let mut c = mobius_part(e, coupling, p, q.centrifugal_factor(SymmetryLimit::Spin, s.tensor), eff);
    add_yukawa(&mut c, -coupling, p);
    c
}

/// Pseudospin limit, quasi-Yukawa tail.
pub fn coeffs_pseudospin_second(
    e: f64,
    p: &PotentialParams,
    s: &SymmetrySpec,
    q: &QuantumState,
) -> EffectiveCoefficients {
    let (m, cps) = (s.mass, s.sym_const);
    let coupling = e - m - cps;
    let eff = -m * m - m * cps + e * e - e * cps;
    let mut c = mobius_part(e, coupling, p, q.centrifugal_factor(SymmetryLimit::Pseudospin, s.tensor), eff);
    quasi_tail(&mut c, coupling, p, s.tail);
    c
}

/// Spin limit, quasi-Yukawa tail.
pub fn coeffs_spin_second(e: f64, p: &PotentialParams, s: &SymmetrySpec, q: &QuantumState) -> EffectiveCoefficients {
    let (m, cs) = (s.mass, s.sym_const);
    let coupling = m + e - cs;
    let eff = -m * m + m * cs + e * e - e * cs;
    let mut c = mobius_part(e, coupling, p, q.centrifugal_factor(SymmetryLimit::Spin, s.tensor), eff);
    quasi_tail(&mut c, coupling, p, s.tail);
    c
}

/// `coupling · (−V1)(1 − y/r)^k`: the constant moves to the right-hand side,
/// the `y/r` and `y²/r²` pieces go through the Pekeris replacement.
fn quasi_tail(c: &mut EffectiveCoefficients, coupling: f64, p: &PotentialParams, form: QuasiTail) {
    c.eff_energy += coupling * p.v1;
    match form {
        QuasiTail::Squared => {
            add_yukawa(c, 2.0 * coupling, p);
            add_yukawa_squared(c, -coupling, p);
        }
        QuasiTail::Linear => add_yukawa(c, coupling, p),
    }
}

/// Dispatches on `(s.limit, s.choice)`.
pub fn effective_coefficients(
    e: f64,
    p: &PotentialParams,
    s: &SymmetrySpec,
    q: &QuantumState,
) -> EffectiveCoefficients {
    match (s.limit, s.choice) {
        (SymmetryLimit::Pseudospin, PotentialChoice::First) => coeffs_pseudospin_first(e, p, s, q),
        (SymmetryLimit::Pseudospin, PotentialChoice::Second) => coeffs_pseudospin_second(e, p, s, q),
        (SymmetryLimit::Spin, PotentialChoice::First) => coeffs_spin_first(e, p, s, q),
        (SymmetryLimit::Spin, PotentialChoice::Second) => coeffs_spin_second(e, p, s, q),
    }
}

/// `V_eff(r) = (quad y² + lin y + cst) / (1 + (D/C) y)²` with `y = e^{-αr}`.
pub fn effective_potential(r: f64, c: &EffectiveCoefficients, p: &PotentialParams) -> f64 {
    let y = (-p.alpha * r).exp();
    let m = p.mobius_factor(r);
    (c.quad * y * y + c.lin * y + c.cst) / (m * m)
}

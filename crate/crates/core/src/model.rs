//! Domain types and the physical potentials.
//!
//! Energies are in fm⁻¹ (natural units), lengths in fm. The Möbius shape
//! constants `A, B, C, D` are dimensionless.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Shape constants and screening of the Möbius-square plus (quasi-)Yukawa family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    /// Möbius-square strength (fm⁻¹).
    pub v0: f64,
    /// Yukawa / quasi-Yukawa strength.
    pub v1: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// Screening parameter (fm⁻¹).
    pub alpha: f64,
}

impl PotentialParams {
    pub fn new(v0: f64, v1: f64, a: f64, b: f64, c: f64, d: f64, alpha: f64) -> Result<Self> {
        let p = Self { v0, v1, a, b, c, d, alpha };
        p.validate()?;
        Ok(p)
    }

    /// Checks the invariants: finite values, `alpha > 0`, `C, D != 0` and no
    /// zero of `C + D exp(-alpha r)` on `r > 0`.
    pub fn validate(&self) -> Result<()> {
        let all = [self.v0, self.v1, self.a, self.b, self.c, self.d, self.alpha];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("potential parameters must be finite".into()));
        }
        if self.alpha <= 0.0 {
            return Err(Error::InvalidParameter(format!("alpha = {} must be > 0", self.alpha)));
        }
        if self.c == 0.0 || self.d == 0.0 {
            return Err(Error::InvalidParameter("C and D must be nonzero".into()));
        }
        // C + D y = 0 with y = exp(-alpha r) in (0, 1) for r > 0.
        let y_pole = -self.c / self.d;
        if y_pole > 0.0 && y_pole < 1.0 {
            return Err(Error::MobiusPole { r: -y_pole.ln() / self.alpha });
        }
        Ok(())
    }

    /// D / C.
    #[inline]
    pub fn ratio(&self) -> f64 {
        self.d / self.c
    }

    /// `1 + (D/C) exp(-alpha r)`, evaluated without cancellation near `r = 0`
    /// when `D = -C`.
    #[inline]
    pub fn mobius_factor(&self, r: f64) -> f64 {
        mobius_factor(r, self.alpha, self.c, self.d)
    }

    /// Same parameters with the Yukawa strength switched off.
    pub fn without_tail(&self) -> Self {
        Self { v1: 0.0, ..*self }
    }
}

pub(crate) fn mobius_factor(r: f64, alpha: f64, c: f64, d: f64) -> f64 {
    let rho = d / c;
    (1.0 + rho) + rho * (-alpha * r).exp_m1()
}

/// Which of Δ = V − S or Σ = V + S carries the potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryLimit {
    /// Σ constant, Δ is the Möbius-square potential; the lower component is solved.
    Pseudospin,
    /// Δ constant, Σ is the Möbius-square potential; the upper component is solved.
    Spin,
}

/// Yukawa tail (first) or quasi-Yukawa tail (second).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PotentialChoice {
    First,
    Second,
}

/// Form of the quasi-Yukawa tail used by the second choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum QuasiTail {
    /// `-V1 (1 - exp(-alpha r)/r)^2`
    #[default]
    Squared,
    /// `-V1 (1 - exp(-alpha r)/r)`
    Linear,
}

macro_rules! keyword_enum {
    ($ty:ident { $($variant:ident => $kw:literal),+ $(,)? }) => {
        impl $ty {
            pub fn keyword(&self) -> &'static str {
                match self { $($ty::$variant => $kw),+ }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.keyword())
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.trim().to_ascii_lowercase().as_str() {
                    $($kw => Ok($ty::$variant),)+
                    other => Err(Error::InvalidParameter(format!(
                        concat!("unknown ", stringify!($ty), " '{}'"), other
                    ))),
                }
            }
        }
    };
}

keyword_enum!(SymmetryLimit { Pseudospin => "pseudospin", Spin => "spin" });
keyword_enum!(PotentialChoice { First => "first", Second => "second" });
keyword_enum!(QuasiTail { Squared => "squared", Linear => "linear" });

/// Symmetry limit, potential choice, symmetry constant, tensor strength and mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetrySpec {
    pub limit: SymmetryLimit,
    pub choice: PotentialChoice,
    pub tail: QuasiTail,
    /// C_ps in the pseudospin limit, C_s in the spin limit (fm⁻¹).
    pub sym_const: f64,
    /// Tensor strength H of U(r) = -H/r.
    pub tensor: f64,
    /// Fermion mass (fm⁻¹).
    pub mass: f64,
}

impl SymmetrySpec {
    pub fn new(limit: SymmetryLimit, choice: PotentialChoice, sym_const: f64, tensor: f64, mass: f64) -> Result<Self> {
        let s = Self { limit, choice, tail: QuasiTail::default(), sym_const, tensor, mass };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return Err(Error::InvalidParameter(format!("mass = {} must be > 0", self.mass)));
        }
        if !self.sym_const.is_finite() || !self.tensor.is_finite() {
            return Err(Error::InvalidParameter("symmetry constant and H must be finite".into()));
        }
        Ok(())
    }

    pub fn with_tensor(&self, tensor: f64) -> Self {
        Self { tensor, ..*self }
    }

    /// The energy excluded by the partner-component denominator:
    /// `M + C_ps` (pseudospin) or `-M + C_s` (spin).
    pub fn forbidden_energy(&self) -> f64 {
        match self.limit {
            SymmetryLimit::Pseudospin => self.mass + self.sym_const,
            SymmetryLimit::Spin => -self.mass + self.sym_const,
        }
    }
}

const ORBITAL_LETTERS: &[u8] = b"SPdfghiklmnoqrtuv";

/// Radial number `n` and spin-orbit number `kappa`.
///
/// `n` is the spectroscopic radial label used in the energy tables. In the
/// pseudospin limit a state with `kappa > 0` is labelled one lower than its
/// doublet partner, so the degree of the Jacobi polynomial in the solved
/// component is `n + 1` there (see [`QuantumState::radial_degree`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumState {
    pub n: u32,
    pub kappa: i32,
}

impl QuantumState {
    pub fn new(n: u32, kappa: i32) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::InvalidParameter("kappa must be nonzero".into()));
        }
        Ok(Self { n, kappa })
    }

    /// Orbital angular momentum of the upper component.
    pub fn l(&self) -> u32 {
        if self.kappa < 0 {
            (-self.kappa - 1) as u32
        } else {
            self.kappa as u32
        }
    }

    /// Pseudo-orbital angular momentum (that of the lower component).
    pub fn l_tilde(&self) -> u32 {
        if self.kappa < 0 {
            (-self.kappa) as u32
        } else {
            (self.kappa - 1) as u32
        }
    }

    /// `2j`, always odd.
    pub fn twice_j(&self) -> u32 {
        2 * self.kappa.unsigned_abs() - 1
    }

    pub fn j(&self) -> f64 {
        self.twice_j() as f64 / 2.0
    }

    /// Spectroscopic label such as `1S1/2` or `0d3/2`.
    pub fn label(&self) -> String {
        let l = self.l() as usize;
        let letter = ORBITAL_LETTERS.get(l).map(|&c| (c as char).to_string()).unwrap_or_else(|| format!("[l={l}]"));
        format!("{}{}{}/2", self.n, letter, self.twice_j())
    }

    /// Inverse of [`QuantumState::label`].
    pub fn parse(label: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("malformed state label '{label}'"));
        let digits = label.chars().take_while(|c| c.is_ascii_digit()).count();
        let n: u32 = label[..digits].parse().map_err(|_| bad())?;
        let rest = &label[digits..];
        let letter = rest.chars().next().ok_or_else(bad)?;
        let l = ORBITAL_LETTERS.iter().position(|&c| c as char == letter).ok_or_else(bad)? as i32;
        let j = rest[letter.len_utf8()..].strip_suffix("/2").ok_or_else(bad)?;
        let twice_j: i32 = j.parse().map_err(|_| bad())?;
        let kappa = if twice_j == 2 * l + 1 {
            -(l + 1)
        } else if twice_j == 2 * l - 1 && l > 0 {
            l
        } else {
            return Err(bad());
        };
        Self::new(n, kappa)
    }

    /// Degree of the Jacobi polynomial in the closed-form component, which is
    /// also its number of interior nodes.
    pub fn radial_degree(&self, limit: SymmetryLimit) -> u32 {
        match limit {
            SymmetryLimit::Pseudospin if self.kappa > 0 => self.n + 1,
            _ => self.n,
        }
    }

    /// Centrifugal factor with the tensor shift:
    /// `(κ+H)(κ+H−1)` for pseudospin, `(κ+H)(κ+H+1)` for spin.
    pub fn centrifugal_factor(&self, limit: SymmetryLimit, tensor: f64) -> f64 {
        let k = self.kappa as f64 + tensor;
        match limit {
            SymmetryLimit::Pseudospin => k * (k - 1.0),
            SymmetryLimit::Spin => k * (k + 1.0),
        }
    }
}

impl fmt::Display for QuantumState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n={}, kappa={})", self.label(), self.n, self.kappa)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Spacing {
    #[default]
    Uniform,
    Log,
}

keyword_enum!(Spacing { Uniform => "uniform", Log => "log" });

/// Radial sample points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Default for RadialGrid {
    fn default() -> Self {
        Self { r_min: 1e-3, r_max: 200.0, points: 8000, spacing: Spacing::Uniform }
    }
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, points: usize, spacing: Spacing) -> Result<Self> {
        let g = Self { r_min, r_max, points, spacing };
        g.validate()?;
        Ok(g)
    }

    pub fn uniform(r_min: f64, r_max: f64, points: usize) -> Result<Self> {
        Self::new(r_min, r_max, points, Spacing::Uniform)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0 && self.r_min < self.r_max && self.r_max.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "grid needs 0 < r_min < r_max, got [{}, {}]",
                self.r_min, self.r_max
            )));
        }
        if self.points < 2 {
            return Err(Error::InvalidParameter("grid needs at least 2 points".into()));
        }
        Ok(())
    }

    /// Step of a uniform grid.
    pub fn step(&self) -> Result<f64> {
        match self.spacing {
            Spacing::Uniform => Ok((self.r_max - self.r_min) / (self.points - 1) as f64),
            Spacing::Log => Err(Error::NonUniformGrid),
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        match self.spacing {
            Spacing::Uniform => {
                let h = (self.r_max - self.r_min) / last;
                (0..self.points).map(|i| self.r_min + i as f64 * h).collect()
            }
            Spacing::Log => {
                let ratio = (self.r_max / self.r_min).ln() / last;
                (0..self.points).map(|i| self.r_min * (i as f64 * ratio).exp()).collect()
            }
        }
    }
}

fn check_radius(r: f64, what: &'static str) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, detail: format!("r = {r} must be positive and finite") })
    }
}

/// `((A + B e^{-αr}) / (C + D e^{-αr}))^2`
fn mobius_square(r: f64, p: &PotentialParams) -> Result<f64> {
    let y = (-p.alpha * r).exp();
    let den = p.c * p.mobius_factor(r);
    if den == 0.0 {
        return Err(Error::MobiusPole { r });
    }
    let q = (p.a + p.b * y) / den;
    Ok(q * q)
}

fn tail(r: f64, p: &PotentialParams, choice: PotentialChoice, form: QuasiTail) -> f64 {
    let yr = (-p.alpha * r).exp() / r;
    match (choice, form) {
        (PotentialChoice::First, _) => -p.v1 * yr,
        (PotentialChoice::Second, QuasiTail::Squared) => -p.v1 * (1.0 - yr).powi(2),
        (PotentialChoice::Second, QuasiTail::Linear) => -p.v1 * (1.0 - yr),
    }
}

fn mobius_yukawa(
    r: f64,
    p: &PotentialParams,
    choice: PotentialChoice,
    form: QuasiTail,
    what: &'static str,
) -> Result<f64> {
    check_radius(r, what)?;
    Ok(p.v0 * mobius_square(r, p)? + tail(r, p, choice, form))
}

/// Δ(r) = V − S in the pseudospin limit: Möbius square plus the exact
/// Yukawa (first choice) or quasi-Yukawa (second choice) tail.
pub fn delta_potential(r: f64, p: &PotentialParams, choice: PotentialChoice, form: QuasiTail) -> Result<f64> {
    mobius_yukawa(r, p, choice, form, "delta_potential")
}

/// Σ(r) = V + S in the spin limit; same family as [`delta_potential`].
pub fn sigma_potential(r: f64, p: &PotentialParams, choice: PotentialChoice, form: QuasiTail) -> Result<f64> {
    mobius_yukawa(r, p, choice, form, "sigma_potential")
}

/// Coulomb-like tensor potential U(r) = −H/r, applied on the whole half-line.
pub fn tensor_potential(r: f64, tensor: f64) -> Result<f64> {
    check_radius(r, "tensor_potential")?;
    Ok(-tensor / r)
}

/// Pekeris-type replacement of 1/r²: `C²α² / (C + D e^{−αr})²`.
pub fn centrifugal_approx(r: f64, alpha: f64, c: f64, d: f64) -> Result<f64> {
    let inv = inverse_r_approx(r, alpha, c, d)?;
    Ok(inv * inv)
}

/// Positive square root of [`centrifugal_approx`]: `Cα / (C + D e^{−αr})`.
pub fn inverse_r_approx(r: f64, alpha: f64, c: f64, d: f64) -> Result<f64> {
    check_radius(r, "inverse_r_approx")?;
    let m = mobius_factor(r, alpha, c, d);
    if m == 0.0 {
        return Err(Error::MobiusPole { r });
    }
    Ok(alpha / m)
}

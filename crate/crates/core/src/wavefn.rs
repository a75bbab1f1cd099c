//! Closed-form radial components.
//!
//! The solved component is
//!
//! ```text
//! N (−ρy)^{e1} (1 + ρy)^{e2} P_n^{(a, b)}(1 + 2ρy),   y = e^{-αr}, ρ = D/C
//! ```
//!
//! with `e1 = √w3`, `e2 = ½ + √(w1 − w2 + w3 + ¼)`, `a = 2 e1`, `b = 2 e2 − 1`.
//! Amplitudes are built in log space: for the reference parameters the
//! envelope alone is of order `e^{-100}` at its peak.

use crate::coeffs::effective_potential;
use crate::error::{Error, Result};
use crate::model::{RadialGrid, SymmetryLimit};
use crate::spectrum::BoundState;

/// Which expression supplies the second Jacobi parameter. The two agree
/// identically; both are kept so the choice can be audited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JacobiConvention {
    /// `b = 2 e2 − 1`.
    #[default]
    Standard,
    /// `b = 2 √(w1 − w2 + w3 + ¼)` as printed next to the polynomial.
    Printed,
}

/// Dimensionless `(w1, w2, w3)` exponent parameters at energy `E`.
///
/// `w1 = quad/(α²ρ²) − Ẽ/α²`, `w2 = lin/(α²ρ) − 2Ẽ/α²`, `w3 = (cst − Ẽ)/α²`.
pub fn exponent_params(bs: &BoundState) -> (f64, f64, f64) {
    let c = bs.coefficients();
    let (al2, rho) = (bs.params.alpha * bs.params.alpha, bs.params.ratio());
    let e = c.eff_energy;
    (c.quad / (al2 * rho * rho) - e / al2, c.lin / (al2 * rho) - 2.0 * e / al2, (c.cst - e) / al2)
}

fn check_jacobi(a: f64, b: f64) -> Result<()> {
    if a > -1.0 && b > -1.0 {
        Ok(())
    } else {
        Err(Error::Domain { what: "jacobi", detail: format!("need a, b > -1, got a = {a}, b = {b}") })
    }
}

/// `P_n^{(a,b)}(x)` by the three-term recurrence.
pub fn jacobi(n: u32, a: f64, b: f64, x: f64) -> Result<f64> {
    check_jacobi(a, b)?;
    Ok(jacobi_unchecked(n, a, b, x))
}

fn jacobi_unchecked(n: u32, a: f64, b: f64, x: f64) -> f64 {
    let mut p0 = 1.0;
    if n == 0 {
        return p0;
    }
    let mut p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// `d/dx P_n^{(a,b)} = ((n + a + b + 1)/2) P_{n−1}^{(a+1, b+1)}`.
pub fn jacobi_derivative(n: u32, a: f64, b: f64, x: f64) -> Result<f64> {
    check_jacobi(a, b)?;
    Ok(jacobi_deriv_unchecked(n, a, b, x, 1))
}

fn jacobi_deriv_unchecked(n: u32, a: f64, b: f64, x: f64, order: u32) -> f64 {
    if order > n {
        return 0.0;
    }
    let mut factor = 1.0;
    for k in 0..order {
        factor *= 0.5 * (n as f64 + a + b + 1.0 + k as f64);
    }
    factor * jacobi_unchecked(n - order, a + order as f64, b + order as f64, x)
}

/// Closed-form state of a converged [`BoundState`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpec {
    pub exp1: f64,
    pub exp2: f64,
    pub jacobi_a: f64,
    pub jacobi_b: f64,
    pub n: u32,
    /// Multiplies `exp(L(r) − log_scale)`; 1 until normalized.
    pub norm: f64,
    /// Envelope log at its peak, subtracted before exponentiating.
    pub log_scale: f64,
    pub bound: BoundState,
}

/// One grid sample of both components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub r: f64,
    /// Upper component.
    pub f: f64,
    /// Lower component.
    pub g: f64,
}

impl WaveSpec {
    pub fn new(bs: &BoundState) -> Result<Self> {
        Self::with_convention(bs, JacobiConvention::Standard)
    }

    pub fn with_convention(bs: &BoundState, convention: JacobiConvention) -> Result<Self> {
        let (w1, w2, w3) = exponent_params(bs);
        let inner = w1 - w2 + w3 + 0.25;
        if !(w3 > 0.0) {
            return Err(Error::NotNormalizable(format!("w3 = {w3} gives no decay at infinity")));
        }
        if !(inner >= 0.0) {
            return Err(Error::NotNormalizable(format!("w1 - w2 + w3 + 1/4 = {inner} < 0")));
        }
        let rho = bs.params.ratio();
        if rho >= 0.0 {
            return Err(Error::Domain {
                what: "closed-form component",
                detail: format!("base -(D/C) e^(-alpha r) is not positive for D/C = {rho}"),
            });
        }
        let exp1 = w3.sqrt();
        let exp2 = 0.5 + inner.sqrt();
        let jacobi_b = match convention {
            JacobiConvention::Standard => 2.0 * exp2 - 1.0,
            JacobiConvention::Printed => 2.0 * inner.sqrt(),
        };
        let mut ws =
            Self { exp1, exp2, jacobi_a: 2.0 * exp1, jacobi_b, n: bs.degree(), norm: 1.0, log_scale: 0.0, bound: *bs };
        ws.log_scale = ws.log_envelope(ws.peak_radius());
        Ok(ws)
    }

    fn rho(&self) -> f64 {
        self.bound.params.ratio()
    }

    fn alpha(&self) -> f64 {
        self.bound.params.alpha
    }

    /// `e1 ln(−ρy) + e2 ln(1 + ρy)`.
    pub fn log_envelope(&self, r: f64) -> f64 {
        let p = &self.bound.params;
        self.exp1 * ((-self.rho()).ln() - p.alpha * r) + self.exp2 * p.mobius_factor(r).ln()
    }

    /// Maximum of the envelope (ignoring the polynomial).
    pub fn peak_radius(&self) -> f64 {
        let u = self.exp1 / (self.exp1 + self.exp2);
        let y = u / -self.rho();
        if y < 1.0 {
            -y.ln() / self.alpha()
        } else {
            1e-6
        }
    }

    /// Solved component and its first two radial derivatives.
    pub fn primary_derivatives(&self, r: f64) -> (f64, f64, f64) {
        let (al, rho) = (self.alpha(), self.rho());
        let y = (-al * r).exp();
        let m = self.bound.params.mobius_factor(r);
        let ry = rho * y;
        let amp = self.norm * (self.log_envelope(r) - self.log_scale).exp();
        let x = 1.0 + 2.0 * ry;
        let (a, b, n) = (self.jacobi_a, self.jacobi_b, self.n);
        let p0 = jacobi_unchecked(n, a, b, x);
        let p1 = jacobi_deriv_unchecked(n, a, b, x, 1);
        let p2 = jacobi_deriv_unchecked(n, a, b, x, 2);
        let dx = -2.0 * al * ry;
        let ddx = 2.0 * al * al * ry;
        let dl = -al * self.exp1 - al * self.exp2 * ry / m;
        let ddl = al * al * self.exp2 * ry / (m * m);
        let g = amp * p0;
        let dg = amp * (dl * p0 + p1 * dx);
        let ddg = amp * ((ddl + dl * dl) * p0 + 2.0 * dl * p1 * dx + p2 * dx * dx + p1 * ddx);
        (g, dg, ddg)
    }

    pub fn primary(&self, r: f64) -> f64 {
        self.primary_derivatives(r).0
    }

    /// Partner component from the first-order coupling.
    pub fn partner(&self, r: f64) -> Result<f64> {
        let (v, dv, _) = self.primary_derivatives(r);
        partner_component(r, &self.bound, v, dv)
    }

    /// `(F, G)` at `r`.
    pub fn components(&self, r: f64) -> Result<(f64, f64)> {
        let v = self.primary(r);
        let w = self.partner(r)?;
        Ok(match self.bound.spec.limit {
            SymmetryLimit::Pseudospin => (w, v),
            SymmetryLimit::Spin => (v, w),
        })
    }

    pub fn sample(&self, grid: &RadialGrid) -> Result<Vec<Sample>> {
        grid.nodes().into_iter().map(|r| self.components(r).map(|(f, g)| Sample { r, f, g })).collect()
    }

    /// Copy with `norm` set so that `∫(F² + G²) dr = 1` on `grid`.
    pub fn normalized(&self, grid: &RadialGrid) -> Result<Self> {
        let k = normalize(self, grid)?;
        Ok(Self { norm: self.norm * k, ..*self })
    }

    /// Interval outside of which the envelope has dropped by `e^{-drop}`
    /// relative to its peak.
    pub fn support(&self, drop: f64) -> (f64, f64) {
        let peak = self.peak_radius();
        let target = self.log_scale - drop;
        let below = |r: f64| self.log_envelope(r) < target;
        let floor = 1e-6_f64.min(peak);
        let lo = if below(floor) { bisect_radius(&below, floor, peak) } else { floor };
        let mut far = peak + 1.0 / self.alpha();
        while !below(far) {
            far = peak + 2.0 * (far - peak);
        }
        (lo, bisect_radius(&below, far, peak))
    }

    /// Uniform grid covering [`WaveSpec::support`] with `drop = 40`.
    pub fn fitted_grid(&self, points: usize) -> Result<RadialGrid> {
        let (lo, hi) = self.support(40.0);
        RadialGrid::uniform(lo, hi, points)
    }
}

/// Bisects for the boundary between `inside` (where `pred` is true) and
/// `outside`.
fn bisect_radius(pred: &impl Fn(f64) -> bool, mut inside: f64, mut outside: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (inside + outside);
        if pred(mid) {
            inside = mid;
        } else {
            outside = mid;
        }
        if (outside - inside).abs() <= 1e-12 * outside.abs().max(1.0) {
            break;
        }
    }
    0.5 * (inside + outside)
}

/// `G(r)`, the closed-form lower component of a pseudospin state.
pub fn lower_component_ps(r: f64, ws: &WaveSpec) -> Result<f64> {
    match ws.bound.spec.limit {
        SymmetryLimit::Pseudospin => Ok(ws.primary(r)),
        SymmetryLimit::Spin => ws.partner(r),
    }
}

/// `F(r)`, the closed-form upper component of a spin state.
pub fn upper_component_s(r: f64, ws: &WaveSpec) -> Result<f64> {
    match ws.bound.spec.limit {
        SymmetryLimit::Spin => Ok(ws.primary(r)),
        SymmetryLimit::Pseudospin => ws.partner(r),
    }
}

/// The component not solved for, from the value and derivative of the one
/// that was.
///
/// Pseudospin: `F = (G' − (κ+H) G / r) / (M − E + C_ps)`.
/// Spin: `G = (F' + (κ+H) F / r) / (M + E − C_s)`.
pub fn partner_component(r: f64, bs: &BoundState, value: f64, derivative: f64) -> Result<f64> {
    let s = &bs.spec;
    let k = bs.state.kappa as f64 + s.tensor;
    let (den, sign) = match s.limit {
        SymmetryLimit::Pseudospin => (s.mass - bs.energy + s.sym_const, -1.0),
        SymmetryLimit::Spin => (s.mass + bs.energy - s.sym_const, 1.0),
    };
    if den.abs() <= 1e-12 * s.mass.abs().max(1.0) {
        return Err(Error::ForbiddenEnergy { energy: bs.energy });
    }
    Ok((derivative + sign * k * value / r) / den)
}

/// Composite Simpson rule on uniform samples; an even sample count closes
/// with the 3/8 rule on the last three intervals.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * h * (values[0] + values[1]),
        3 => h / 3.0 * (values[0] + 4.0 * values[1] + values[2]),
        _ => {
            let (head, tail) = if n % 2 == 1 { (n, 0) } else { (n - 3, 3) };
            let mut s = values[0] + values[head - 1];
            for (i, v) in values[1..head - 1].iter().enumerate() {
                s += if i % 2 == 0 { 4.0 } else { 2.0 } * v;
            }
            let mut total = s * h / 3.0;
            if tail == 3 {
                let t = &values[n - 4..];
                total += 3.0 * h / 8.0 * (t[0] + 3.0 * t[1] + 3.0 * t[2] + t[3]);
            }
            total
        }
    }
}

/// Factor by which `ws` must be scaled for `∫(F² + G²) dr = 1` on `grid`.
pub fn normalize(ws: &WaveSpec, grid: &RadialGrid) -> Result<f64> {
    if !(ws.exp1 > 0.0) {
        return Err(Error::NotNormalizable(format!("exp1 = {} gives no decay at infinity", ws.exp1)));
    }
    let h = grid.step()?;
    let dens: Vec<f64> = ws.sample(grid)?.iter().map(|s| s.f * s.f + s.g * s.g).collect();
    let total = simpson(&dens, h);
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::NotNormalizable(format!("density integral {total}")));
    }
    Ok(1.0 / total.sqrt())
}

/// Sign changes, ignoring samples below `1e-10 · max |v|`.
pub fn count_nodes(values: &[f64]) -> u32 {
    count_sign_changes(values, 1e-10)
}

/// Sign changes, ignoring samples below `rel_cut · max |v|` (and exact zeros).
pub fn count_sign_changes(values: &[f64], rel_cut: f64) -> u32 {
    let cut = rel_cut * values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut last = 0.0;
    let mut nodes = 0;
    for &v in values {
        if v.abs() <= cut {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            nodes += 1;
        }
        last = v;
    }
    nodes
}

/// `max |−u'' + (V_eff − Ẽ) u| / max |u''|` over the grid, dropping
/// `trim` of the points at each end.
pub fn ode_residual(ws: &WaveSpec, grid: &RadialGrid, trim: f64) -> f64 {
    let c = ws.bound.coefficients();
    let p = &ws.bound.params;
    let nodes = grid.nodes();
    let skip = (trim * nodes.len() as f64).ceil() as usize;
    let (mut worst, mut scale) = (0.0_f64, 0.0_f64);
    for &r in &nodes[skip..nodes.len() - skip] {
        let (u, _, ddu) = ws.primary_derivatives(r);
        let res = -ddu + (effective_potential(r, &c, p) - c.eff_energy) * u;
        worst = worst.max(res.abs());
        scale = scale.max(ddu.abs());
    }
    worst / scale
}

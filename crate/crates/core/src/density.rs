//! Macroscopic spectral densities at unit mean: the Marčenko-Pastur law and
//! its superstatistical generalisations for square and rectangular `X`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::quad::log_integral_unimodal;
use crate::specfun::{integrate, ln_gamma, ln_tricomi_u, upper_incomplete_gamma, QuadratureSpec};

const DENSITY_TOL: f64 = 1e-12;

/// `X± = (c^{−1/2} ± 1)²`.
pub fn mp_bounds(c: f64) -> (f64, f64) {
    let r = c.sqrt().recip();
    ((r - 1.0).powi(2), (r + 1.0).powi(2))
}

fn check_c(c: f64, allow_one: bool) -> Result<()> {
    let ok = c > 0.0 && (c < 1.0 || (allow_one && c == 1.0));
    if ok {
        Ok(())
    } else if allow_one {
        Err(Error::domain(format!("c must lie in (0, 1], got {c}")))
    } else {
        Err(Error::domain(format!("c must lie in (0, 1), got {c}")))
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("gamma must be finite and > 0, got {gamma}")))
    }
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("x must be finite and > 0, got {x}")))
    }
}

/// Marčenko-Pastur density at unit mean; zero outside `[cX₋, cX₊]`.
pub fn mp_density(x: f64, c: f64) -> Result<f64> {
    check_c(c, true)?;
    let (xm, xp) = mp_bounds(c);
    let (lo, hi) = (c * xm, c * xp);
    if !(x > lo && x < hi) {
        return Ok(if c == 1.0 && x == 0.0 { f64::INFINITY } else { 0.0 });
    }
    if c == 1.0 {
        return Ok((4.0 / x - 1.0).sqrt() / (2.0 * PI));
    }
    Ok(((x - lo) * (hi - x)).sqrt() / (2.0 * PI * c * x))
}

fn ln_square_prefactor(gamma: f64) -> Result<f64> {
    Ok((gamma + 1.0) * (gamma + 1.0).ln() - ln_gamma(gamma + 1.0)?)
}

fn ln_square_closed(x: f64, gamma: f64, ln_pref: f64) -> Result<f64> {
    let z = (gamma + 1.0) * x / 4.0;
    Ok(ln_pref - (4.0 * PI.sqrt()).ln() - z + gamma * (x / 4.0).ln() + ln_tricomi_u(1.5, gamma + 1.5, z)?)
}

/// Generalised semicircle from its Tricomi-function form.
pub fn rho_gamma_square_closed(x: f64, gamma: f64) -> Result<f64> {
    check_x(x)?;
    check_gamma(gamma)?;
    Ok(ln_square_closed(x, gamma, ln_square_prefactor(gamma)?)?.exp())
}

/// Generalised semicircle by direct quadrature of its integral representation.
pub fn rho_gamma_square_integral(x: f64, gamma: f64) -> Result<f64> {
    check_x(x)?;
    check_gamma(gamma)?;
    let z = (gamma + 1.0) * x / 4.0;
    // ∫_0^∞ e^{−zt} (1+t)^{γ−1} √t dt, shifted by its maximum.
    let psi = |t: f64| -z * t + (gamma - 1.0) * t.ln_1p() + 0.5 * t.ln();
    let b = 2.0 * gamma - 1.0 - 2.0 * z;
    let disc = (b * b + 8.0 * z).sqrt();
    let peak = if b >= 0.0 { (b + disc) / (4.0 * z) } else { 2.0 / (disc - b) };
    let curvature = (gamma - 1.0) / (1.0 + peak).powi(2) + 0.5 / (peak * peak);
    let width = curvature.sqrt().recip();
    let top = psi(peak);
    let breaks = [-16.0, -4.0, -1.0, 0.0, 1.0, 4.0, 16.0].map(|k| peak + k * width);
    let spec = QuadratureSpec::semi_infinite(0.0)
        .with_scale(width.max(1e-300))
        .with_lower_singularity(0.5)
        .with_tolerance(DENSITY_TOL)
        .with_max_subdivisions(5000)
        .with_breakpoints(breaks);
    let q = integrate(|t| (psi(t) - top).exp(), &spec)?;
    let ln = ln_square_prefactor(gamma)? - (2.0 * PI).ln() + gamma * (x / 4.0).ln() - z + top + q.value.ln();
    Ok(ln.exp())
}

/// `ln ∫_{X₋}^{X₊} t^{−γ−2} e^{−a/t} √((t−X₋)(X₊−t)) dt` with
/// `t = X₋ + (X₊−X₋) sin²θ`.
fn ln_rect_integral(a: f64, gamma: f64, xm: f64, xp: f64) -> Result<f64> {
    let span = xp - xm;
    let ln_two_span_sq = (2.0 * span * span).ln();
    let h = |theta: f64| {
        let (s, co) = theta.sin_cos();
        let t = xm + span * s * s;
        ln_two_span_sq + 2.0 * (s * co).ln() - (gamma + 2.0) * t.ln() - a / t
    };
    let upper = 0.5 * PI;
    let grid = 128;
    let step = upper / grid as f64;
    let (mut best, mut best_v) = (0.5 * upper, f64::NEG_INFINITY);
    for k in 1..grid {
        let th = k as f64 * step;
        let v = h(th);
        if v > best_v {
            best = th;
            best_v = v;
        }
    }
    let mode = golden_max(&h, (best - step).max(0.0), (best + step).min(upper));
    log_integral_unimodal(h, Some(0.0), Some(upper), mode, DENSITY_TOL)
}

/// Maximiser of a unimodal function on `[a, b]` by golden-section search.
fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..100 {
        if b - a <= 1e-14 * (1.0 + a.abs()) {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        }
    }
    0.5 * (a + b)
}

/// Generalised Marčenko-Pastur density for `0 < c < 1`.
pub fn rho_gamma_rect(x: f64, gamma: f64, c: f64) -> Result<f64> {
    check_x(x)?;
    check_gamma(gamma)?;
    check_c(c, false)?;
    let (xm, xp) = mp_bounds(c);
    let ln_pref = (gamma + 1.0) * ((gamma + 1.0) / c).ln() - (2.0 * PI).ln() - ln_gamma(gamma + 1.0)?;
    let a = x * (gamma + 1.0) / c;
    Ok((ln_pref + gamma * x.ln() + ln_rect_integral(a, gamma, xm, xp)?).exp())
}

/// `D_γ = lim_{x→0} ρ_γ(x)/x^γ` for the rectangular model.
pub fn rect_small_x_constant(gamma: f64, c: f64) -> Result<f64> {
    check_gamma(gamma)?;
    check_c(c, false)?;
    let (xm, xp) = mp_bounds(c);
    let ln_pref = (gamma + 1.0) * ((gamma + 1.0) / c).ln() - (2.0 * PI).ln() - ln_gamma(gamma + 1.0)?;
    Ok((ln_pref + ln_rect_integral(0.0, gamma, xm, xp)?).exp())
}

/// `ρ_γ(x)·√x` as `x → 0` for the square model.
pub fn square_small_x_prefactor(gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    Ok((0.5 * (gamma + 1.0).ln() + ln_gamma(gamma + 0.5)? - ln_gamma(gamma + 1.0)?).exp() / PI)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensityKind {
    Mp { c: f64 },
    GenSquare { gamma: f64 },
    GenRect { gamma: f64, c: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportBounds {
    pub lower: f64,
    /// `None` for an unbounded support.
    pub upper: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    SmallX,
    LargeX,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Asymptotic {
    pub value: f64,
    pub branch: Branch,
}

/// An analytic density with its γ-dependent constants evaluated once.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityModel {
    kind: DensityKind,
    ln_pref: f64,
}

impl DensityModel {
    pub fn mp(c: f64) -> Result<Self> {
        check_c(c, true)?;
        Ok(Self { kind: DensityKind::Mp { c }, ln_pref: 0.0 })
    }

    pub fn gen_square(gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        Ok(Self { kind: DensityKind::GenSquare { gamma }, ln_pref: ln_square_prefactor(gamma)? })
    }

    pub fn gen_rect(gamma: f64, c: f64) -> Result<Self> {
        check_gamma(gamma)?;
        check_c(c, false)?;
        let ln_pref = (gamma + 1.0) * ((gamma + 1.0) / c).ln() - (2.0 * PI).ln() - ln_gamma(gamma + 1.0)?;
        Ok(Self { kind: DensityKind::GenRect { gamma, c }, ln_pref })
    }

    /// Generalised model for any `c ∈ (0, 1]`.
    pub fn gen(gamma: f64, c: f64) -> Result<Self> {
        check_c(c, true)?;
        if c == 1.0 {
            Self::gen_square(gamma)
        } else {
            Self::gen_rect(gamma, c)
        }
    }

    pub fn from_kind(kind: DensityKind) -> Result<Self> {
        match kind {
            DensityKind::Mp { c } => Self::mp(c),
            DensityKind::GenSquare { gamma } => Self::gen_square(gamma),
            DensityKind::GenRect { gamma, c } => Self::gen_rect(gamma, c),
        }
    }

    pub fn kind(&self) -> DensityKind {
        self.kind
    }

    pub fn c(&self) -> f64 {
        match self.kind {
            DensityKind::Mp { c } | DensityKind::GenRect { c, .. } => c,
            DensityKind::GenSquare { .. } => 1.0,
        }
    }

    pub fn label(&self) -> String {
        match self.kind {
            DensityKind::Mp { c } => format!("mp(c={c})"),
            DensityKind::GenSquare { gamma } => format!("gen_square(gamma={gamma})"),
            DensityKind::GenRect { gamma, c } => format!("gen_rect(gamma={gamma}, c={c})"),
        }
    }

    pub fn support(&self) -> SupportBounds {
        match self.kind {
            DensityKind::Mp { c } => {
                let (xm, xp) = mp_bounds(c);
                SupportBounds { lower: c * xm, upper: Some(c * xp) }
            }
            _ => SupportBounds { lower: 0.0, upper: None },
        }
    }

    /// `true` when the density behaves like `x^{−1/2}` at the origin.
    pub fn diverges_at_origin(&self) -> bool {
        self.c() == 1.0
    }

    /// Density at `x`; zero off the support, the limit value at `x = 0`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(Error::domain("density evaluated at NaN"));
        }
        if x < 0.0 || x == f64::INFINITY {
            return Ok(0.0);
        }
        match self.kind {
            DensityKind::Mp { c } => mp_density(x, c),
            DensityKind::GenSquare { gamma } => {
                if x == 0.0 {
                    return Ok(f64::INFINITY);
                }
                Ok(ln_square_closed(x, gamma, self.ln_pref)?.exp())
            }
            DensityKind::GenRect { gamma, c } => {
                if x == 0.0 {
                    return Ok(0.0);
                }
                let (xm, xp) = mp_bounds(c);
                let a = x * (gamma + 1.0) / c;
                Ok((self.ln_pref + gamma * x.ln() + ln_rect_integral(a, gamma, xm, xp)?).exp())
            }
        }
    }

    /// `ϑ(y) = |y|·ρ(y²)`, continued to its limit at `y = 0`.
    pub fn theta(&self, y: f64) -> Result<f64> {
        if y.is_nan() {
            return Err(Error::domain("theta evaluated at NaN"));
        }
        if y == 0.0 {
            return match self.kind {
                DensityKind::Mp { c: 1.0 } => Ok(1.0 / PI),
                DensityKind::Mp { .. } | DensityKind::GenRect { .. } => Ok(0.0),
                DensityKind::GenSquare { gamma } => square_small_x_prefactor(gamma),
            };
        }
        Ok(y.abs() * self.pdf(y * y)?)
    }

    /// Small-`x` form for `x < 1`, large-`x` form otherwise.
    pub fn asymptotic(&self, x: f64) -> Result<Asymptotic> {
        check_x(x)?;
        let branch = if x < 1.0 { Branch::SmallX } else { Branch::LargeX };
        let value = match branch {
            Branch::SmallX => self.small_x(x)?,
            Branch::LargeX => self.large_x(x)?,
        };
        Ok(Asymptotic { value, branch })
    }

    pub fn small_x(&self, x: f64) -> Result<f64> {
        match self.kind {
            DensityKind::GenSquare { gamma } => Ok(square_small_x_prefactor(gamma)? / x.sqrt()),
            DensityKind::GenRect { gamma, c } => Ok(rect_small_x_constant(gamma, c)? * x.powf(gamma)),
            DensityKind::Mp { .. } => Err(Error::invalid("asymptotic forms exist for the generalised models only")),
        }
    }

    pub fn large_x(&self, x: f64) -> Result<f64> {
        match self.kind {
            DensityKind::GenSquare { gamma } => {
                let ln = (gamma - 0.5) * (gamma + 1.0).ln() - (4.0 * PI.sqrt()).ln() - ln_gamma(gamma + 1.0)?
                    - (gamma + 1.0) * x / 4.0
                    + (gamma - 1.5) * (x / 4.0).ln();
                Ok(ln.exp())
            }
            DensityKind::GenRect { gamma, c } => {
                let (xm, xp) = mp_bounds(c);
                let ln = 0.5 * (xp - xm).ln() - (4.0 * PI.sqrt()).ln() - ln_gamma(gamma + 1.0)? - (gamma - 1.0) * xp.ln()
                    + (gamma - 0.5) * ((gamma + 1.0) / c).ln()
                    + (gamma - 1.5) * x.ln()
                    - (gamma + 1.0) * x / (c * xp);
                Ok(ln.exp())
            }
            DensityKind::Mp { .. } => Err(Error::invalid("asymptotic forms exist for the generalised models only")),
        }
    }

    /// Exponential decay rate of the large-`x` tail.
    pub fn tail_rate(&self) -> Option<f64> {
        match self.kind {
            DensityKind::GenSquare { gamma } => Some((gamma + 1.0) / 4.0),
            DensityKind::GenRect { gamma, c } => Some((gamma + 1.0) / (c * mp_bounds(c).1)),
            DensityKind::Mp { .. } => None,
        }
    }

    /// `∫ x^k ρ(x) dx` over the support.
    pub fn moment(&self, k: i32) -> Result<f64> {
        let f = |x: f64| -> Result<f64> { Ok(self.pdf(x)? * x.powi(k)) };
        let tol = 1e-10;
        match self.kind {
            DensityKind::Mp { c } => {
                let (lo, hi) = (self.support().lower, self.support().upper.unwrap());
                let mut spec = QuadratureSpec::finite(lo, hi).with_tolerance(tol).with_upper_singularity(0.5);
                spec = if c == 1.0 { spec.with_lower_singularity(-0.5) } else { spec.with_lower_singularity(0.5) };
                Ok(crate::specfun::try_integrate(f, &spec)?.value)
            }
            _ => {
                let rate = self.tail_rate().unwrap();
                let mut spec = QuadratureSpec::semi_infinite(0.0)
                    .with_scale(1.0)
                    .with_tolerance(tol)
                    .with_breakpoints([0.25, 1.0, 2.0, 4.0, 8.0, 16.0].map(|b| b * (1.0 / rate).max(1.0).min(4.0)));
                if self.diverges_at_origin() {
                    spec = spec.with_lower_singularity(-0.5);
                }
                Ok(crate::specfun::try_integrate(f, &spec)?.value)
            }
        }
    }
}

/// `ϑ(y) = |y|·ρ(y²)` for any model.
pub fn theta_map(y: f64, model: &DensityModel) -> Result<f64> {
    model.theta(y)
}

/// `ϑ` in the limit `γ → 0`: `|y| Γ(−1/2, y²/4) / (4√π)`, equal to `1/√π` at the cusp.
pub fn theta_gamma_zero(y: f64) -> Result<f64> {
    if y.is_nan() {
        return Err(Error::domain("theta_gamma_zero evaluated at NaN"));
    }
    let a = y.abs();
    if a < 2e-6 {
        // Γ(−1/2, u) = 2u^{−1/2} − 2√π + 2u^{1/2} + O(u^{3/2})
        return Ok(1.0 / PI.sqrt() - 0.5 * a + a * a / (4.0 * PI.sqrt()));
    }
    Ok(a * upper_incomplete_gamma(-0.5, a * a / 4.0)? / (4.0 * PI.sqrt()))
}

/// Evaluates `model` in the asymptotic regime that applies at `x`.
pub fn asymptotic_branch(x: f64, model: &DensityModel) -> Result<Asymptotic> {
    model.asymptotic(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn mp_support_and_edges() {
        assert_eq!(mp_density(4.0, 1.0).unwrap(), 0.0);
        let (xm, xp) = mp_bounds(0.4);
        assert!((xm - 0.337_722_339_831_620_8).abs() < 1e-12);
        assert!((xp - 6.662_277_660_168_379).abs() < 1e-12);
        assert_eq!(mp_density(0.4 * xm - 1e-9, 0.4).unwrap(), 0.0);
        assert_eq!(mp_density(0.4 * xp + 1e-9, 0.4).unwrap(), 0.0);
        assert!(mp_density(1.0, 0.4).unwrap() > 0.0);
        assert!(mp_density(1.0, 1.5).is_err());
    }

    #[test]
    fn mp_mass_and_mean() {
        for c in [0.4, 0.7, 1.0] {
            let m = DensityModel::mp(c).unwrap();
            assert!((m.moment(0).unwrap() - 1.0).abs() < 1e-9, "c = {c}");
            assert!((m.moment(1).unwrap() - 1.0).abs() < 1e-9, "c = {c}");
        }
    }

    #[test]
    fn square_small_x_prefactor_value() {
        // √3·Γ(5/2)/(π·Γ(3)) = √3·(3√π/4)/(2π)
        let expect = 3f64.sqrt() * 0.75 * PI.sqrt() / (2.0 * PI);
        assert!(rel(square_small_x_prefactor(2.0).unwrap(), expect) < 1e-12);
        assert!((expect - 0.366_452).abs() < 1e-6);
        let x = 1e-8;
        assert!(rel(rho_gamma_square_closed(x, 2.0).unwrap() * x.sqrt(), expect) < 1e-3);
    }

    #[test]
    fn wl_limit_of_prefactor() {
        assert!((square_small_x_prefactor(1e6).unwrap() - 1.0 / PI).abs() < 1e-6);
    }

    #[test]
    fn closed_and_integral_agree() {
        for gamma in [0.5, 2.0, 10.0] {
            for x in [1e-3, 0.05, 0.7, 1.0, 3.3, 12.0, 40.0] {
                let a = rho_gamma_square_closed(x, gamma).unwrap();
                let b = rho_gamma_square_integral(x, gamma).unwrap();
                assert!(rel(a, b) < 1e-8, "gamma = {gamma}, x = {x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn tail_matches_asymptotic() {
        let m = DensityModel::gen_square(2.0).unwrap();
        for x in [40.0, 60.0, 100.0, 400.0] {
            let r = m.pdf(x).unwrap() / m.large_x(x).unwrap();
            assert!((0.95..=1.05 + 1e-9).contains(&r), "x = {x}: {r}");
        }
    }

    #[test]
    fn rect_constant_makes_small_x_flat() {
        let (gamma, c) = (2.0, 0.4);
        let m = DensityModel::gen_rect(gamma, c).unwrap();
        let d = rect_small_x_constant(gamma, c).unwrap();
        for x in [1e-5, 1e-4, 3e-4, 7e-4] {
            assert!(rel(m.pdf(x).unwrap() / x.powi(2), d) < 0.01, "x = {x}");
        }
        // First-order drift: ρ/(D x^γ) ≈ 1 − (γ+1)/c · ⟨1/t⟩ · x, with the
        // average over t^{−γ−2} √((t−X₋)(X₊−t)) on [X₋, X₊].
        let (xm, xp) = mp_bounds(c);
        let spec = QuadratureSpec::finite(xm, xp)
            .with_lower_singularity(0.5)
            .with_upper_singularity(0.5)
            .with_tolerance(1e-12);
        let w = |t: f64, k: i32| t.powf(-gamma - 2.0 - k as f64) * ((t - xm) * (xp - t)).sqrt();
        let inv_t = integrate(|t| w(t, 1), &spec).unwrap().value / integrate(|t| w(t, 0), &spec).unwrap().value;
        let x = 1e-3;
        let predicted = (gamma + 1.0) / c * inv_t * x;
        let observed = 1.0 - m.pdf(x).unwrap() / (d * x.powi(2));
        assert!(rel(observed, predicted) < 0.05, "{observed} vs {predicted}");
    }

    #[test]
    fn rect_tail_rate() {
        let m = DensityModel::gen_rect(2.0, 0.4).unwrap();
        let (_, xp) = mp_bounds(0.4);
        assert!(rel(m.tail_rate().unwrap(), 3.0 / (0.4 * xp)) < 1e-15);
        let x = 400.0;
        let r = m.pdf(x).unwrap() / m.large_x(x).unwrap();
        assert!((r - 1.0).abs() < 0.05, "{r}");
    }

    #[test]
    fn rect_approaches_square_as_c_to_one() {
        for x in [0.5, 1.0, 2.0, 3.0] {
            let a = rho_gamma_rect(x, 2.0, 0.999).unwrap();
            let b = rho_gamma_square_closed(x, 2.0).unwrap();
            assert!((a - b).abs() < 1e-2, "x = {x}");
        }
    }

    #[test]
    fn theta_of_mp_is_semicircle() {
        let m = DensityModel::mp(1.0).unwrap();
        for y in [-1.9, -0.5, 0.3, 1.0, 1.99] {
            let expect = (4.0 - y * y as f64).sqrt() / (2.0 * PI);
            assert!((m.theta(y).unwrap() - expect).abs() < 1e-14);
        }
        assert_eq!(m.theta(0.0).unwrap(), 1.0 / PI);
    }

    #[test]
    fn theta_symmetry_and_origin() {
        let m = DensityModel::gen_square(2.0).unwrap();
        for y in [0.1, 0.9, 2.5] {
            assert_eq!(m.theta(y).unwrap(), m.theta(-y).unwrap());
        }
        assert_eq!(m.theta(0.0).unwrap(), square_small_x_prefactor(2.0).unwrap());
        assert_eq!(DensityModel::gen_rect(2.0, 0.4).unwrap().theta(0.0).unwrap(), 0.0);
        for y in [1e-7, 0.3, 1.0, 3.0] {
            assert_eq!(theta_gamma_zero(y).unwrap(), theta_gamma_zero(-y).unwrap());
        }
    }

    #[test]
    fn theta_gamma_zero_is_continuous_at_the_cusp() {
        let inner = theta_gamma_zero(1.9e-6).unwrap();
        let outer = theta_gamma_zero(2.1e-6).unwrap();
        assert!((inner - outer).abs() < 1e-6);
        assert!((theta_gamma_zero(0.0).unwrap() - 1.0 / PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn asymptotic_branches() {
        let m = DensityModel::gen_square(2.0).unwrap();
        assert_eq!(m.asymptotic(0.01).unwrap().branch, Branch::SmallX);
        assert_eq!(m.asymptotic(50.0).unwrap().branch, Branch::LargeX);
        assert!(DensityModel::mp(0.5).unwrap().asymptotic(1.0).is_err());
    }

    #[test]
    fn domain_errors() {
        assert!(rho_gamma_square_integral(0.0, 2.0).is_err());
        assert!(rho_gamma_square_integral(-1.0, 2.0).is_err());
        assert!(rho_gamma_square_closed(1.0, 0.0).is_err());
        assert!(rho_gamma_rect(1.0, 2.0, 1.0).is_err());
        assert!(DensityModel::gen_rect(2.0, 0.0).is_err());
        assert_eq!(DensityModel::gen_square(2.0).unwrap().pdf(-1.0).unwrap(), 0.0);
    }
}

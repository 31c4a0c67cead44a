use super::quad::log_integral_unimodal;
use super::{checked_exp, gamma::ln_gamma, softplus, SPECFUN_TOL};
use crate::error::{Error, Result};

/// `ln Ψ(a, b; z)` for `a > 0`, `z > 0`.
///
/// `Ψ(a,b;z) = Γ(a)^{-1} ∫_0^∞ e^{−zt} t^{a−1} (1+t)^{b−a−1} dt`, taken with
/// `t = e^u`.
pub fn ln_tricomi_u(a: f64, b: f64, z: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("tricomi_u needs a > 0, got {a}")));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("tricomi_u needs z > 0, got {z}")));
    }
    if !b.is_finite() {
        return Err(Error::domain(format!("tricomi_u parameter b = {b} is not finite")));
    }
    let c = b - a - 1.0;
    // Stationary point: z w² − (a + c − z) w − a = 0 with w = e^u.
    let p = a + c - z;
    let disc = (p * p + 4.0 * z * a).sqrt();
    let w = if p >= 0.0 { (p + disc) / (2.0 * z) } else { 2.0 * a / (disc - p) };
    let ln_int = log_integral_unimodal(
        |u| -z * u.exp() + a * u + c * softplus(u),
        None,
        None,
        w.ln(),
        SPECFUN_TOL,
    )?;
    Ok(ln_int - ln_gamma(a)?)
}

/// Tricomi's confluent hypergeometric function `Ψ(a, b; z)`.
pub fn tricomi_u(a: f64, b: f64, z: f64) -> Result<f64> {
    let ln = ln_tricomi_u(a, b, z)?;
    checked_exp(ln, &format!("tricomi_u({a}, {b}, {z})"))
}

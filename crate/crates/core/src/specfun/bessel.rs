use super::quad::log_integral_unimodal;
use super::{checked_exp, SPECFUN_TOL};
use crate::error::{Error, Result};

/// `ln K_ν(x)`.
///
/// Starts from `K_ν(x) = x^ν/2^{ν+1} ∫_0^∞ t^{−ν−1} exp(−t − x²/(4t)) dt`;
/// `t = (x/2)e^u` turns it into `½∫ exp(νu − x·cosh u) du` over the real
/// line. Writing `cosh u = 1 + 2 sinh²(u/2)` keeps the `−x` offset exact.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("bessel_k needs x > 0, got {x}")));
    }
    if !nu.is_finite() {
        return Err(Error::domain(format!("bessel_k order {nu} is not finite")));
    }
    let nu = nu.abs();
    let mode = (nu / x).asinh();
    let ln_int = log_integral_unimodal(
        |u| {
            let s = (0.5 * u).sinh();
            nu * u - 2.0 * x * s * s
        },
        None,
        None,
        mode,
        SPECFUN_TOL,
    )?;
    Ok(ln_int - x - std::f64::consts::LN_2)
}

/// `K_ν(x)`, the modified Bessel function of the second kind.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    let ln = ln_bessel_k(nu, x)?;
    checked_exp(ln, &format!("bessel_k({nu}, {x})"))
}

/// `ln[z^{γ/2} K_γ(2√(γz))]`.
pub fn ln_scaled_bessel_k(gamma: f64, z: f64) -> Result<f64> {
    if !(gamma > 0.0) || !(z > 0.0) || !gamma.is_finite() || !z.is_finite() {
        return Err(Error::Domain(format!("scaled K needs gamma, z > 0, got {gamma}, {z}")));
    }
    Ok(0.5 * gamma * z.ln() + ln_bessel_k(gamma, 2.0 * (gamma * z).sqrt())?)
}

/// Large-`γ` form of [`ln_scaled_bessel_k`]: `ln[√(π/2) γ^{(γ−1)/2} e^{−γ−z}]`.
pub fn ln_scaled_bessel_k_asymptotic(gamma: f64, z: f64) -> Result<f64> {
    if !(gamma > 0.0) || !z.is_finite() || !gamma.is_finite() {
        return Err(Error::Domain(format!("asymptotic K needs gamma > 0, got {gamma}")));
    }
    Ok(0.5 * (std::f64::consts::PI / 2.0).ln() + 0.5 * (gamma - 1.0) * gamma.ln() - gamma - z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn half_integer_order_is_elementary() {
        let expect = (PI / 4.0).sqrt() * (-2.0f64).exp();
        assert!(rel(bessel_k(0.5, 2.0).unwrap(), expect) < 1e-11);
        for &x in &[0.01, 0.5, 3.0, 40.0] {
            let k32 = (PI / (2.0 * x)).sqrt() * (-x as f64).exp() * (1.0 + 1.0 / x);
            assert!(rel(bessel_k(1.5, x).unwrap(), k32) < 1e-11, "x = {x}");
        }
    }

    #[test]
    fn order_zero_at_one() {
        // Frozen from a Simpson evaluation of ∫_0^∞ exp(−cosh t) dt (see tests/oracles.rs).
        assert!(rel(bessel_k(0.0, 1.0).unwrap(), 0.421_024_438_240_708_3) < 1e-11);
    }

    #[test]
    fn three_term_recurrence() {
        let x = 3.0;
        let nu = 3.0;
        let lhs = bessel_k(nu + 1.0, x).unwrap();
        let rhs = bessel_k(nu - 1.0, x).unwrap() + 2.0 * nu / x * bessel_k(nu, x).unwrap();
        assert!(rel(lhs, rhs) < 1e-11);
    }

    #[test]
    fn negative_order_is_reflected() {
        assert_eq!(bessel_k(-2.5, 1.3).unwrap(), bessel_k(2.5, 1.3).unwrap());
    }

    #[test]
    fn log_path_survives_underflow() {
        let ln = ln_bessel_k(0.5, 2000.0).unwrap();
        let expect = 0.5 * (PI / 4000.0).ln() - 2000.0;
        assert!((ln - expect).abs() < 1e-9);
        let big = ln_bessel_k(300.0, 1.0).unwrap();
        assert!(big > 1000.0);
        assert!(matches!(bessel_k(300.0, 1.0), Err(Error::Overflow { .. })));
    }

    #[test]
    fn domain() {
        assert!(bessel_k(1.0, 0.0).is_err());
        assert!(bessel_k(1.0, -2.0).is_err());
    }

    #[test]
    fn large_order_scaled_form() {
        let r = (ln_scaled_bessel_k(200.0, 1.0).unwrap() - ln_scaled_bessel_k_asymptotic(200.0, 1.0).unwrap()).exp();
        assert!((r - 1.0).abs() < 0.01, "{r}");
        let r10 = (ln_scaled_bessel_k(10.0, 1.0).unwrap() - ln_scaled_bessel_k_asymptotic(10.0, 1.0).unwrap()).exp();
        assert!((r10 - 1.0).abs() > (r - 1.0).abs());
        assert!(ln_scaled_bessel_k(0.0, 1.0).is_err());
    }
}

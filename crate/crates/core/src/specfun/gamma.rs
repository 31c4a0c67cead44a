use std::f64::consts::PI;

use super::quad::log_integral_unimodal;
use super::{checked_exp, SPECFUN_TOL};
use crate::error::{Error, Result};

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `ln Γ(x)` for `x ≥ 1`.
///
/// `t = x·e^v` gives `Γ(x) = x^x e^{−x} ∫ exp(−x(e^v − 1 − v)) dv`.
fn ln_gamma_ge1(x: f64) -> Result<f64> {
    let ln_int = log_integral_unimodal(|v| -x * (v.exp_m1() - v), None, None, 0.0, SPECFUN_TOL)?;
    Ok(x * x.ln() - x + ln_int)
}

/// `ln |Γ(x)|`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("ln_gamma of NaN"));
    }
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x >= 1.0 {
        ln_gamma_ge1(x)
    } else if x > 0.0 {
        Ok(ln_gamma_ge1(x + 1.0)? - x.ln())
    } else {
        // Γ(x) Γ(1 − x) = π / sin(πx)
        let s = (PI * x).sin().abs();
        Ok(PI.ln() - s.ln() - ln_gamma(1.0 - x)?)
    }
}

/// `Γ(x)`; errors at the poles and when the value exceeds f64 range.
pub fn gamma_fn(x: f64) -> Result<f64> {
    let ln = ln_gamma(x)?;
    let magnitude = checked_exp(ln, &format!("gamma_fn({x})"))?;
    let negative = x < 0.0 && (x.floor() as i64).rem_euclid(2) != 0;
    Ok(if negative { -magnitude } else { magnitude })
}

/// `ln Γ(a, x)` for `x > 0` and any real `a`.
///
/// With `t = x·e^u`, `Γ(a, x) = x^a ∫_0^∞ exp(a·u − x·e^u) du`, which
/// converges for every `a` once `x > 0`.
pub fn ln_upper_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("upper_incomplete_gamma needs x > 0, got a = {a}, x = {x}")));
    }
    if x < 1e-12 {
        return Err(Error::domain(format!("upper_incomplete_gamma: x = {x} is below 1e-12")));
    }
    if a > x {
        // Centre on the peak: u = ln(a/x) + v.
        let shift = (a / x).ln();
        let ln_int = log_integral_unimodal(|v| -a * (v.exp_m1() - v), Some(-shift), None, 0.0, SPECFUN_TOL)?;
        return Ok(a * a.ln() - a + ln_int);
    }
    let ln_int = log_integral_unimodal(|u| a * u - x * u.exp(), Some(0.0), None, 0.0, SPECFUN_TOL)?;
    Ok(a * x.ln() + ln_int)
}

/// `Γ(a, x) = ∫_x^∞ t^{a−1} e^{−t} dt`.
pub fn upper_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    let ln = ln_upper_incomplete_gamma(a, x)?;
    checked_exp(ln, &format!("upper_incomplete_gamma({a}, {x})"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::quad::{integrate, QuadratureSpec};

    /// Lanczos (g = 7, 9 terms); independent of the quadrature path.
    fn lanczos_gamma(x: f64) -> f64 {
        const G: f64 = 7.0;
        const C: [f64; 9] = [
            0.999_999_999_999_809_9,
            676.520_368_121_885_1,
            -1_259.139_216_722_402_8,
            771.323_428_777_653_1,
            -176.615_029_162_140_6,
            12.507_343_278_686_905,
            -0.138_571_095_265_720_12,
            9.984_369_578_019_572e-6,
            1.505_632_735_149_311_6e-7,
        ];
        if x < 0.5 {
            return PI / ((PI * x).sin() * lanczos_gamma(1.0 - x));
        }
        let x = x - 1.0;
        let mut a = C[0];
        let t = x + G + 0.5;
        for (i, c) in C.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn half_is_sqrt_pi() {
        assert!(rel(gamma_fn(0.5).unwrap(), PI.sqrt()) < 1e-12);
    }

    #[test]
    fn integers_are_factorials() {
        assert!(rel(gamma_fn(5.0).unwrap(), 24.0) < 1e-12);
        assert!(rel(gamma_fn(1.0).unwrap(), 1.0) < 1e-12);
        assert!(rel(gamma_fn(11.0).unwrap(), 3_628_800.0) < 1e-12);
    }

    #[test]
    fn recurrence_from_unit_interval() {
        let base = lanczos_gamma(1.3);
        let expect = 6.3 * 5.3 * 4.3 * 3.3 * 2.3 * 1.3 * base;
        assert!(rel(gamma_fn(7.3).unwrap(), expect) < 1e-12);
    }

    #[test]
    fn agrees_with_lanczos_over_a_range() {
        for &x in &[0.01, 0.3, 0.77, 1.5, 2.5, 9.1, 33.3, 120.5, -0.5, -1.5, -3.7] {
            assert!(rel(gamma_fn(x).unwrap(), lanczos_gamma(x)) < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn poles_and_overflow() {
        assert!(matches!(gamma_fn(0.0), Err(Error::Pole(_))));
        assert!(matches!(gamma_fn(-3.0), Err(Error::Pole(_))));
        assert!(matches!(gamma_fn(200.0), Err(Error::Overflow { .. })));
        let stirling = 200.0 * 200f64.ln() - 200.0 - 0.5 * 200f64.ln() + 0.5 * (2.0 * PI).ln() + 1.0 / 2400.0;
        assert!((ln_gamma(200.0).unwrap() - stirling).abs() < 1e-9);
    }

    #[test]
    fn incomplete_unit_shape_is_exponential() {
        for &x in &[1e-6, 0.3, 1.0, 7.0, 50.0] {
            assert!(rel(upper_incomplete_gamma(1.0, x).unwrap(), (-x as f64).exp()) < 1e-12);
        }
    }

    #[test]
    fn incomplete_half_shape() {
        // √π·erfc(1)
        assert!(rel(upper_incomplete_gamma(0.5, 1.0).unwrap(), 0.278_805_585_280_317_3) < 1e-11);
    }

    #[test]
    fn incomplete_negative_shape_matches_quadrature() {
        let spec = QuadratureSpec::semi_infinite(0.25).with_tolerance(1e-13).with_scale(0.5);
        let direct = integrate(|t| t.powf(-1.5) * (-t).exp(), &spec).unwrap().value;
        assert!(rel(upper_incomplete_gamma(-0.5, 0.25).unwrap(), direct) < 1e-11);
    }

    #[test]
    fn incomplete_recurrence_holds() {
        for &(a, x) in &[(-0.5, 0.25), (-2.3, 1.7), (0.4, 3.0), (-1.5, 0.01)] {
            let lhs = upper_incomplete_gamma(a, x).unwrap();
            let rhs = (upper_incomplete_gamma(a + 1.0, x).unwrap() - x.powf(a) * (-x as f64).exp()) / a;
            assert!(rel(lhs, rhs) < 1e-10, "a = {a}, x = {x}");
        }
    }

    #[test]
    fn incomplete_domain() {
        assert!(upper_incomplete_gamma(1.0, 0.0).is_err());
        assert!(upper_incomplete_gamma(1.0, -1.0).is_err());
        assert!(upper_incomplete_gamma(1.0, 1e-13).is_err());
    }
}

//! Special functions evaluated from their integral representations.

mod bessel;
mod gamma;
pub mod quad;
mod tricomi;

pub use bessel::{bessel_k, ln_bessel_k, ln_scaled_bessel_k, ln_scaled_bessel_k_asymptotic};
pub use gamma::{gamma_fn, ln_gamma, ln_upper_incomplete_gamma, upper_incomplete_gamma};
pub use quad::{integrate, try_integrate, Interval, Quadrature, QuadratureSpec};
pub use tricomi::{ln_tricomi_u, tricomi_u};

/// Relative tolerance used internally by the special functions.
pub(crate) const SPECFUN_TOL: f64 = 1e-13;

/// `ln(1 + e^u)` without overflow.
#[inline]
pub(crate) fn softplus(u: f64) -> f64 {
    if u > 0.0 {
        u + (-u).exp().ln_1p()
    } else {
        u.exp().ln_1p()
    }
}

/// Largest argument whose exponential is finite.
pub(crate) const LN_MAX: f64 = 709.782_712_893_384;

pub(crate) fn checked_exp(ln: f64, what: &str) -> crate::Result<f64> {
    if ln > LN_MAX {
        Err(crate::Error::Overflow { what: what.to_string() })
    } else {
        Ok(ln.exp())
    }
}

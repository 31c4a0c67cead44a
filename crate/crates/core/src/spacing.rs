//! Level-spacing laws, all reported at unit mass and unit mean.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::density::{Asymptotic, Branch};
use crate::ensembles::SpectralSample;
use crate::error::{Error, Result};
use crate::specfun::quad::{log_integral_unimodal, root_decreasing};
use crate::specfun::{ln_bessel_k, ln_gamma, try_integrate, QuadratureSpec};

const SPACING_TOL: f64 = 1e-12;

fn check_beta(beta: u32) -> Result<()> {
    if matches!(beta, 1 | 2 | 4) {
        Ok(())
    } else {
        Err(Error::domain(format!("beta must be 1, 2 or 4, got {beta}")))
    }
}

fn check_s(s: f64) -> Result<()> {
    if s >= 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("spacing must be finite and >= 0, got {s}")))
    }
}

/// `(a_β, b_β)` fixing mass and mean of `a s^β e^{−b s²}` to one.
pub fn wd_constants(beta: u32) -> Result<(f64, f64)> {
    check_beta(beta)?;
    let bf = beta as f64;
    let lg1 = ln_gamma((bf + 1.0) / 2.0)?;
    let b = (2.0 * (ln_gamma((bf + 2.0) / 2.0)? - lg1)).exp();
    let a = 2.0 * b.powf((bf + 1.0) / 2.0) / lg1.exp();
    Ok((a, b))
}

/// Wigner-Dyson surmise.
pub fn wd_surmise(s: f64, beta: u32) -> Result<f64> {
    check_s(s)?;
    let (a, b) = wd_constants(beta)?;
    Ok(a * s.powi(beta as i32) * (-b * s * s).exp())
}

/// `ν̄ = β(m−1)/2 − 1` for the two-eigenvalue WL ensemble.
pub fn wl2_nu_bar(beta: u32, m: usize) -> f64 {
    beta as f64 * (m as f64 - 1.0) / 2.0 - 1.0
}

fn wl2_ln_c(beta: u32, m: usize, n_scale: f64) -> Result<f64> {
    let bf = beta as f64;
    let nu = wl2_nu_bar(beta, m);
    let nb = n_scale * bf;
    Ok(-((-0.5 + bf + nu) * 2f64.ln() + (-1.5 - bf - nu) * nb.ln() + ln_gamma((1.0 + bf) / 2.0)? + ln_gamma(1.0 + nu + bf / 2.0)?))
}

fn check_wl2(beta: u32, m: usize, n_scale: f64) -> Result<()> {
    check_beta(beta)?;
    if m < 2 {
        return Err(Error::domain(format!("m must be >= 2, got {m}")));
    }
    if !(n_scale > 0.0) || !n_scale.is_finite() {
        return Err(Error::domain(format!("n_scale must be > 0, got {n_scale}")));
    }
    Ok(())
}

fn wl2_raw_with(s: f64, beta: u32, m: usize, n_scale: f64, ln_c: f64) -> Result<f64> {
    if s == 0.0 {
        return Ok(0.0);
    }
    let bf = beta as f64;
    let nu = wl2_nu_bar(beta, m);
    Ok((ln_c + (bf + nu + 0.5) * s.ln() + ln_bessel_k(0.5 + nu, n_scale * bf * s)?).exp())
}

/// Exact `N = 2` spacing density before unit-mean rescaling.
pub fn wl2_raw_spacing(s: f64, beta: u32, m: usize, n_scale: f64) -> Result<f64> {
    check_s(s)?;
    check_wl2(beta, m, n_scale)?;
    wl2_raw_with(s, beta, m, n_scale, wl2_ln_c(beta, m, n_scale)?)
}

/// First moment `d` of the raw `N = 2` spacing density, by quadrature.
pub fn wl2_mean(beta: u32, m: usize, n_scale: f64) -> Result<f64> {
    check_wl2(beta, m, n_scale)?;
    let ln_c = wl2_ln_c(beta, m, n_scale)?;
    let bf = beta as f64;
    let peak = (bf + wl2_nu_bar(beta, m) + 1.5) / (n_scale * bf);
    let spec = QuadratureSpec::semi_infinite(0.0)
        .with_scale(peak)
        .with_tolerance(SPACING_TOL)
        .with_breakpoints([0.25 * peak, peak, 4.0 * peak]);
    Ok(try_integrate(|s| Ok(s * wl2_raw_with(s, beta, m, n_scale, ln_c)?), &spec)?.value)
}

/// Exact `N = 2` WL spacing rescaled to unit mean: `d·P(s·d)`.
pub fn wl2_exact_spacing(s: f64, beta: u32, m: usize, n_scale: f64) -> Result<f64> {
    Ok(SpacingModel::wl2(beta, m, n_scale)?.pdf(s)?)
}

fn gen_ln_c(beta: u32, gamma: f64) -> Result<f64> {
    let bf = beta as f64;
    Ok(2f64.ln() + (bf + 1.0) / 2.0 * (bf / 2.0).ln() - ln_gamma(gamma + 1.0)? - ln_gamma((bf + 1.0) / 2.0)?)
}

/// Closed-form first moment `d_γ` of the folded surmise.
pub fn gen_surmise_d(beta: u32, gamma: f64) -> Result<f64> {
    check_beta(beta)?;
    check_gamma(gamma)?;
    let bf = beta as f64;
    Ok((gamma + 1.0) * (ln_gamma(bf / 2.0 + 1.0)? - 0.5 * (bf / 2.0).ln() - ln_gamma((bf + 1.0) / 2.0)?).exp())
}

/// `α_γ = (3/2)(β d_γ²)^{1/3}`; `γ = 0` is accepted here.
pub fn gen_surmise_alpha(beta: u32, gamma: f64) -> Result<f64> {
    check_beta(beta)?;
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(Error::domain(format!("gamma must be >= 0, got {gamma}")));
    }
    let bf = beta as f64;
    let d = (gamma + 1.0) * (ln_gamma(bf / 2.0 + 1.0)? - 0.5 * (bf / 2.0).ln() - ln_gamma((bf + 1.0) / 2.0)?).exp();
    Ok(1.5 * (bf * d * d).cbrt())
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("gamma must be finite and > 0, got {gamma}")))
    }
}

/// `ln P_γ(s)` of the folded surmise before mean rescaling, via `ξ = e^u`.
fn gen_raw_ln(s: f64, beta: u32, gamma: f64, ln_c: f64) -> Result<f64> {
    let bf = beta as f64;
    let k = bf * s * s / 2.0;
    let psi = |u: f64| (bf - gamma) * u - (-u).exp() - k * (2.0 * u).exp();
    // ψ'(u) = (β − γ) + e^{−u} − 2k e^{2u}, strictly decreasing.
    let mode = root_decreasing(|u| (bf - gamma) + (-u).exp() - 2.0 * k * (2.0 * u).exp(), 0.0);
    Ok(ln_c + bf * s.ln() + log_integral_unimodal(psi, None, None, mode, SPACING_TOL)?)
}

/// Folded surmise before unit-mean rescaling.
pub fn gen_surmise_raw(s: f64, beta: u32, gamma: f64) -> Result<f64> {
    check_s(s)?;
    check_beta(beta)?;
    check_gamma(gamma)?;
    if s == 0.0 {
        return Ok(0.0);
    }
    Ok(gen_raw_ln(s, beta, gamma, gen_ln_c(beta, gamma)?)?.exp())
}

/// Generalised surmise at unit mean: `d_γ·P_γ(s·d_γ)`.
pub fn gen_surmise(s: f64, beta: u32, gamma: f64) -> Result<f64> {
    SpacingModel::gen(beta, gamma)?.pdf(s)
}

/// First moment of the raw folded surmise by quadrature.
pub fn gen_surmise_d_by_quadrature(beta: u32, gamma: f64) -> Result<f64> {
    check_beta(beta)?;
    check_gamma(gamma)?;
    let ln_c = gen_ln_c(beta, gamma)?;
    let d = gen_surmise_d(beta, gamma)?;
    let spec = QuadratureSpec::semi_infinite(0.0)
        .with_scale(d)
        .with_tolerance(SPACING_TOL)
        .with_lower_singularity(beta.min(1) as f64 * (beta as f64).min(gamma))
        .with_breakpoints([0.1 * d, 0.5 * d, d, 2.0 * d, 5.0 * d]);
    Ok(try_integrate(
        |s| if s == 0.0 { Ok(0.0) } else { Ok(s * gen_raw_ln(s, beta, gamma, ln_c)?.exp()) },
        &spec,
    )?
    .value)
}

/// Short- and long-distance forms of the generalised surmise.
///
/// Small `s`: `κ₁ s^{min(β,γ)}`; large `s`: `κ₂ s^{(β+2γ−1)/3} e^{−α_γ s^{2/3}}`.
/// `κ₁, κ₂` are matched to the exact curve at `s = 1e-6` and `s = 20`.
pub fn gen_surmise_asymptotics(s: f64, beta: u32, gamma: f64) -> Result<Asymptotic> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::domain(format!("asymptotics need s > 0, got {s}")));
    }
    let model = SpacingModel::gen(beta, gamma)?;
    let bf = beta as f64;
    if s < 1.0 {
        let p = bf.min(gamma);
        let anchor = 1e-6;
        let kappa1 = model.pdf(anchor)? / anchor.powf(p);
        Ok(Asymptotic { value: kappa1 * s.powf(p), branch: Branch::SmallX })
    } else {
        let alpha = gen_surmise_alpha(beta, gamma)?;
        let q = (bf + 2.0 * gamma - 1.0) / 3.0;
        let shape = |t: f64| q * t.ln() - alpha * t.powf(2.0 / 3.0);
        let anchor = 20.0;
        let ln_kappa2 = model.ln_pdf(anchor)? - shape(anchor);
        Ok(Asymptotic { value: (ln_kappa2 + shape(s)).exp(), branch: Branch::LargeX })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum SpacingKind {
    Wd { beta: u32 },
    Wl2 { beta: u32, m: usize, n_scale: f64 },
    Gen { beta: u32, gamma: f64 },
}

/// A spacing law with its normalisation constants evaluated once.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpacingModel {
    kind: SpacingKind,
    /// `ln a_β`, `ln C` or `ln C_γ`.
    ln_c: f64,
    /// `b_β` for WD, otherwise the first moment `d` of the raw law.
    scale: f64,
}

impl SpacingModel {
    pub fn wd(beta: u32) -> Result<Self> {
        let (a, b) = wd_constants(beta)?;
        Self::wd_with_constants(beta, a, b)
    }

    /// WD form with explicit `(a, b)`; used to exercise the self-checks.
    pub fn wd_with_constants(beta: u32, a: f64, b: f64) -> Result<Self> {
        check_beta(beta)?;
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::domain("WD constants must be positive"));
        }
        Ok(Self { kind: SpacingKind::Wd { beta }, ln_c: a.ln(), scale: b })
    }

    pub fn wl2(beta: u32, m: usize, n_scale: f64) -> Result<Self> {
        check_wl2(beta, m, n_scale)?;
        Ok(Self { kind: SpacingKind::Wl2 { beta, m, n_scale }, ln_c: wl2_ln_c(beta, m, n_scale)?, scale: wl2_mean(beta, m, n_scale)? })
    }

    pub fn gen(beta: u32, gamma: f64) -> Result<Self> {
        check_beta(beta)?;
        check_gamma(gamma)?;
        Ok(Self { kind: SpacingKind::Gen { beta, gamma }, ln_c: gen_ln_c(beta, gamma)?, scale: gen_surmise_d(beta, gamma)? })
    }

    pub fn from_kind(kind: SpacingKind) -> Result<Self> {
        match kind {
            SpacingKind::Wd { beta } => Self::wd(beta),
            SpacingKind::Wl2 { beta, m, n_scale } => Self::wl2(beta, m, n_scale),
            SpacingKind::Gen { beta, gamma } => Self::gen(beta, gamma),
        }
    }

    pub fn kind(&self) -> SpacingKind {
        self.kind
    }

    pub fn beta(&self) -> u32 {
        match self.kind {
            SpacingKind::Wd { beta } | SpacingKind::Wl2 { beta, .. } | SpacingKind::Gen { beta, .. } => beta,
        }
    }

    pub fn label(&self) -> String {
        match self.kind {
            SpacingKind::Wd { beta } => format!("wd(beta={beta})"),
            SpacingKind::Wl2 { beta, m, .. } => format!("wl2(beta={beta}, m={m})"),
            SpacingKind::Gen { beta, gamma } => format!("gen(beta={beta}, gamma={gamma})"),
        }
    }

    /// `(a, b)` for WD, `(C, d)` or `(C_γ, d_γ)` otherwise.
    pub fn constants(&self) -> (f64, f64) {
        (self.ln_c.exp(), self.scale)
    }

    /// `ln p(s)` of the unit-mean law; `−∞` at `s = 0`.
    pub fn ln_pdf(&self, s: f64) -> Result<f64> {
        check_s(s)?;
        if s == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        match self.kind {
            SpacingKind::Wd { beta } => Ok(self.ln_c + beta as f64 * s.ln() - self.scale * s * s),
            SpacingKind::Wl2 { beta, m, n_scale } => {
                let d = self.scale;
                let t = s * d;
                let bf = beta as f64;
                let nu = wl2_nu_bar(beta, m);
                Ok(d.ln() + self.ln_c + (bf + nu + 0.5) * t.ln() + ln_bessel_k(0.5 + nu, n_scale * bf * t)?)
            }
            SpacingKind::Gen { beta, gamma } => Ok(self.scale.ln() + gen_raw_ln(s * self.scale, beta, gamma, self.ln_c)?),
        }
    }

    pub fn pdf(&self, s: f64) -> Result<f64> {
        Ok(self.ln_pdf(s)?.exp())
    }

    /// Exponent of the `s → 0` power law.
    pub fn small_s_exponent(&self) -> f64 {
        match self.kind {
            SpacingKind::Wd { beta } => beta as f64,
            SpacingKind::Wl2 { beta, m, .. } => {
                let nu = wl2_nu_bar(beta, m);
                beta as f64 + nu + 0.5 - (nu + 0.5).abs()
            }
            SpacingKind::Gen { beta, gamma } => (beta as f64).min(gamma),
        }
    }

    /// `∫ s^k p(s) ds`.
    pub fn moment(&self, k: i32) -> Result<f64> {
        let spec = QuadratureSpec::semi_infinite(0.0)
            .with_scale(1.0)
            .with_tolerance(1e-11)
            .with_max_subdivisions(4000)
            .with_lower_singularity(self.small_s_exponent().min(1.0))
            .with_breakpoints([0.1, 0.5, 1.0, 2.0, 5.0]);
        Ok(try_integrate(|s| Ok(s.powi(k) * self.pdf(s)?), &spec)?.value)
    }
}

/// Closed-form WD cumulative for `β = 1`: `1 − e^{−πs²/4}`.
pub fn wd1_cdf(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else {
        -(-PI * s * s / 4.0).exp_m1()
    }
}

/// `s_k = (λ_k − λ_{k−1}) / ⟨λ_k − λ_{k−1}⟩` across samples (`k` is 1-based).
pub fn individual_spacing(samples: &[SpectralSample], k: usize) -> Result<Vec<f64>> {
    let spectra: Vec<&[f64]> = samples.iter().map(|s| s.eigenvalues.as_slice()).collect();
    individual_spacing_of(&spectra, k)
}

pub(crate) fn individual_spacing_of(spectra: &[&[f64]], k: usize) -> Result<Vec<f64>> {
    if spectra.len() < 100 {
        return Err(Error::invalid(format!("need at least 100 samples, got {}", spectra.len())));
    }
    let n = spectra[0].len();
    if k < 2 || k > n {
        return Err(Error::invalid(format!("spacing index k must satisfy 2 <= k <= {n}, got {k}")));
    }
    let mut gaps = Vec::with_capacity(spectra.len());
    for ev in spectra {
        if ev.len() != n {
            return Err(Error::invalid("all spectra must have the same length"));
        }
        if ev.windows(2).any(|w| !(w[1] >= w[0])) {
            return Err(Error::invalid("spectra must be sorted ascending"));
        }
        gaps.push(ev[k - 1] - ev[k - 2]);
    }
    let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
    if !(mean > 0.0) {
        return Err(Error::invalid("mean spacing is zero"));
    }
    Ok(gaps.into_iter().map(|g| g / mean).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn wd_constants_match_known_values() {
        let (a, b) = wd_constants(1).unwrap();
        assert!(rel(a, PI / 2.0) < 1e-12 && rel(b, PI / 4.0) < 1e-12);
        let (a, b) = wd_constants(2).unwrap();
        assert!(rel(a, 32.0 / (PI * PI)) < 1e-12 && rel(b, 4.0 / PI) < 1e-12);
        let (a, b) = wd_constants(4).unwrap();
        assert!(rel(a, 2f64.powi(18) / (729.0 * PI.powi(3))) < 1e-12);
        assert!(rel(b, 64.0 / (9.0 * PI)) < 1e-12);
    }

    #[test]
    fn all_laws_have_unit_mass_and_mean() {
        let models = [
            SpacingModel::wd(1).unwrap(),
            SpacingModel::wd(2).unwrap(),
            SpacingModel::wd(4).unwrap(),
            SpacingModel::wl2(1, 2, 0.5).unwrap(),
            SpacingModel::wl2(1, 5, 0.5).unwrap(),
            SpacingModel::wl2(2, 3, 0.5).unwrap(),
            SpacingModel::gen(1, 1.0).unwrap(),
            SpacingModel::gen(1, 7.0).unwrap(),
            SpacingModel::gen(2, 10.0).unwrap(),
            SpacingModel::gen(4, 50.0).unwrap(),
        ];
        for m in models {
            assert!((m.moment(0).unwrap() - 1.0).abs() < 1e-8, "{}", m.label());
            assert!((m.moment(1).unwrap() - 1.0).abs() < 1e-8, "{}", m.label());
        }
    }

    #[test]
    fn wl2_beta1_m2_is_s_k0() {
        let m = SpacingModel::wl2(1, 2, 0.5).unwrap();
        let d = m.constants().1;
        // P ∝ s K₀(s/2); the ratio to that shape must be constant.
        let shape = |s: f64| s * crate::specfun::bessel_k(0.0, 0.5 * s).unwrap();
        let r0 = wl2_raw_spacing(0.3, 1, 2, 0.5).unwrap() / shape(0.3);
        for s in [0.7, 1.5, 4.0] {
            assert!(rel(wl2_raw_spacing(s, 1, 2, 0.5).unwrap() / shape(s), r0) < 1e-11);
        }
        assert!(d > 0.0);
    }

    #[test]
    fn wl2_beta2_m2_is_s2_exp() {
        // n_scale = 1: P ∝ s² e^{−2s}
        let shape = |s: f64| s * s * (-2.0 * s).exp();
        let r0 = wl2_raw_spacing(0.3, 2, 2, 1.0).unwrap() / shape(0.3);
        for s in [0.7, 1.5, 4.0] {
            assert!(rel(wl2_raw_spacing(s, 2, 2, 1.0).unwrap() / shape(s), r0) < 1e-11);
        }
        assert!(rel(wl2_mean(2, 2, 1.0).unwrap(), 1.5) < 1e-11);
    }

    #[test]
    fn wl2_mean_matches_closed_form() {
        for (beta, m, n) in [(1, 2, 0.5), (1, 5, 0.5), (2, 3, 1.0), (4, 4, 0.5)] {
            let bf = beta as f64;
            let nu = wl2_nu_bar(beta, m);
            let closed = 2.0 / (n * bf)
                * (ln_gamma(1.5 + nu + bf / 2.0).unwrap() + ln_gamma(1.0 + bf / 2.0).unwrap()
                    - ln_gamma((1.0 + bf) / 2.0).unwrap()
                    - ln_gamma(1.0 + nu + bf / 2.0).unwrap())
                .exp();
            assert!(rel(wl2_mean(beta, m, n).unwrap(), closed) < 1e-10);
        }
    }

    #[test]
    fn wl2_rescaled_is_scale_free() {
        for s in [0.1, 0.8, 2.5] {
            let a = wl2_exact_spacing(s, 1, 3, 0.5).unwrap();
            for n in [1.0, 3.0] {
                assert!(rel(wl2_exact_spacing(s, 1, 3, n).unwrap(), a) < 1e-9);
            }
        }
    }

    #[test]
    fn gen_d_closed_form_and_quadrature() {
        let d = gen_surmise_d(1, 2.0).unwrap();
        assert!(rel(d, (PI / 2.0).sqrt() * 3.0) < 1e-12);
        for beta in [1, 2, 4] {
            for gamma in [0.5, 7.0, 50.0] {
                let q = gen_surmise_d_by_quadrature(beta, gamma).unwrap();
                assert!(rel(q, gen_surmise_d(beta, gamma).unwrap()) < 1e-8, "beta = {beta}, gamma = {gamma}");
            }
        }
    }

    #[test]
    fn gen_alpha_at_zero() {
        assert!(rel(gen_surmise_alpha(1, 0.0).unwrap(), 1.5 * (PI / 2.0).cbrt()) < 1e-12);
    }

    #[test]
    fn gen_reduces_to_wd_for_large_gamma() {
        let gen = SpacingModel::gen(1, 1000.0).unwrap();
        let mut sup: f64 = 0.0;
        for i in 0..=200 {
            let s = 4.0 * i as f64 / 200.0;
            sup = sup.max((gen.pdf(s).unwrap() - wd_surmise(s, 1).unwrap()).abs());
        }
        assert!(sup <= 0.01, "{sup}");
    }

    #[test]
    fn small_s_slope() {
        let m = SpacingModel::gen(2, 0.5).unwrap();
        let (s1, s2) = (1e-4, 1e-3);
        let slope = (m.pdf(s2).unwrap() / m.pdf(s1).unwrap()).ln() / (s2 / s1 as f64).ln();
        assert!(rel(slope, 0.5) < 0.02, "{slope}");
    }

    #[test]
    fn stretched_exponential_tail_slope() {
        let (beta, gamma) = (1, 7.0);
        let m = SpacingModel::gen(beta, gamma).unwrap();
        let alpha = gen_surmise_alpha(beta, gamma).unwrap();
        let g = |s: f64| m.ln_pdf(s).unwrap() + alpha * s.powf(2.0 / 3.0);
        let slope = (g(40.0) - g(20.0)) / 2f64.ln();
        let expect = (1.0 + 2.0 * gamma - 1.0) / 3.0;
        assert!(rel(slope, expect) < 0.05, "{slope} vs {expect}");
    }

    #[test]
    fn asymptotic_anchors_reproduce_the_curve() {
        let m = SpacingModel::gen(1, 7.0).unwrap();
        let small = gen_surmise_asymptotics(1e-6, 1, 7.0).unwrap();
        assert_eq!(small.branch, Branch::SmallX);
        assert!(rel(small.value, m.pdf(1e-6).unwrap()) < 1e-12);
        let large = gen_surmise_asymptotics(20.0, 1, 7.0).unwrap();
        assert_eq!(large.branch, Branch::LargeX);
        assert!(rel(large.value, m.pdf(20.0).unwrap()) < 1e-12);
        assert!(gen_surmise_asymptotics(0.0, 1, 7.0).is_err());
    }

    #[test]
    fn wd1_cdf_matches_quadrature() {
        let m = SpacingModel::wd(1).unwrap();
        let spec = QuadratureSpec::finite(0.0, 1.3).with_tolerance(1e-13);
        let q = try_integrate(|s| m.pdf(s), &spec).unwrap().value;
        assert!((q - wd1_cdf(1.3)).abs() < 1e-12);
    }

    #[test]
    fn individual_spacing_mean_is_one() {
        let samples: Vec<SpectralSample> = (0..150)
            .map(|i| SpectralSample { xi: 1.0, eigenvalues: vec![0.0, 1.0 + (i % 7) as f64, 5.0 + i as f64] })
            .collect();
        let s = individual_spacing(&samples, 3).unwrap();
        let mean = s.iter().sum::<f64>() / s.len() as f64;
        assert!((mean - 1.0).abs() < 1e-14);
        assert!(individual_spacing(&samples, 1).is_err());
        assert!(individual_spacing(&samples, 4).is_err());
        assert!(individual_spacing(&samples[..50], 2).is_err());
    }

    #[test]
    fn bad_parameters() {
        assert!(wd_surmise(1.0, 3).is_err());
        assert!(wd_surmise(-1.0, 1).is_err());
        assert!(wl2_exact_spacing(1.0, 1, 1, 0.5).is_err());
        assert!(gen_surmise(1.0, 1, 0.0).is_err());
    }
}

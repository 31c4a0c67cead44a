//! Fast invariant suite behind the `selfcheck` subcommand.

use std::f64::consts::PI;

use crate::density::{rho_gamma_square_closed, rho_gamma_square_integral, DensityModel};
use crate::ensembles::{EnsembleConfig, Family, SamplingMethod};
use crate::error::Result;
use crate::harness::{cdf_of, draw_spectra, ks_statistic, pooled_unit_mean, run_density_experiment};
use crate::spacing::{gen_surmise_d, gen_surmise_d_by_quadrature, wd_constants, SpacingModel};
use crate::specfun::{bessel_k, ln_gamma, ln_scaled_bessel_k, ln_scaled_bessel_k_asymptotic, tricomi_u, upper_incomplete_gamma};

/// Deliberate corruptions used to confirm that the suite can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Replace `b₁ = π/4` by `π/3`.
    WdB1,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, result: Result<(bool, String)>) -> CheckOutcome {
    match result {
        Ok((passed, detail)) => CheckOutcome { name, passed, detail },
        Err(e) => CheckOutcome { name, passed: false, detail: format!("error: {e}") },
    }
}

fn gamma_recurrence() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for x in [0.3, 1.7, 4.2, 17.5, 88.8] {
        worst = worst.max((ln_gamma(x + 1.0)? - ln_gamma(x)? - f64::ln(x)).abs());
    }
    Ok((worst < 1e-11, format!("max |lnΓ(x+1) − lnΓ(x) − ln x| = {worst:.2e}")))
}

fn bessel_recurrence() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for (nu, x) in [(0.7, 0.4), (2.5, 3.0), (6.0, 11.0)] {
        let lhs = bessel_k(nu + 1.0, x)?;
        let rhs = bessel_k(nu - 1.0, x)? + 2.0 * nu / x * bessel_k(nu, x)?;
        worst = worst.max((lhs / rhs - 1.0).abs());
    }
    Ok((worst < 1e-10, format!("max relative residual = {worst:.2e}")))
}

fn tricomi_identity() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for z in [0.2, 1.0, 6.0] {
        let u = tricomi_u(1.0, 1.0, z)?;
        worst = worst.max((u / (f64::exp(z) * upper_incomplete_gamma(0.0, z)?) - 1.0).abs());
    }
    Ok((worst < 1e-10, format!("Ψ(1,1,z) vs e^z Γ(0,z): {worst:.2e}")))
}

fn bessel_asymptotic() -> Result<(bool, String)> {
    let r = (ln_scaled_bessel_k(200.0, 1.0)? - ln_scaled_bessel_k_asymptotic(200.0, 1.0)?).exp();
    Ok(((r - 1.0).abs() < 0.01, format!("ratio at γ = 200, z = 1: {r:.6}")))
}

fn wd_normalization(fault: Option<Fault>) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for beta in [1, 2, 4] {
        let (a, mut b) = wd_constants(beta)?;
        if beta == 1 && fault == Some(Fault::WdB1) {
            b = PI / 3.0;
        }
        let m = SpacingModel::wd_with_constants(beta, a, b)?;
        worst = worst.max((m.moment(0)? - 1.0).abs()).max((m.moment(1)? - 1.0).abs());
    }
    Ok((worst < 1e-10, format!("max |mass − 1|, |mean − 1| = {worst:.2e}")))
}

fn surmise_normalization() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for (beta, gamma) in [(1, 1.0), (1, 7.0), (2, 10.0)] {
        let m = SpacingModel::gen(beta, gamma)?;
        worst = worst.max((m.moment(0)? - 1.0).abs()).max((m.moment(1)? - 1.0).abs());
        worst = worst.max((gen_surmise_d_by_quadrature(beta, gamma)? / gen_surmise_d(beta, gamma)? - 1.0).abs());
    }
    let m = SpacingModel::wl2(1, 3, 0.5)?;
    worst = worst.max((m.moment(0)? - 1.0).abs()).max((m.moment(1)? - 1.0).abs());
    Ok((worst < 1e-7, format!("max moment error = {worst:.2e}")))
}

fn density_normalization() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for gamma in [0.5, 2.0, 10.0] {
        for c in [1.0, 0.4] {
            let m = DensityModel::gen(gamma, c)?;
            worst = worst.max((m.moment(0)? - 1.0).abs()).max((m.moment(1)? - 1.0).abs());
        }
    }
    Ok((worst < 1e-6, format!("max |mass − 1|, |mean − 1| = {worst:.2e}")))
}

fn closed_vs_integral() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for gamma in [0.5, 2.0, 10.0] {
        for x in [1e-3, 0.1, 1.0, 4.0, 15.0] {
            let a = rho_gamma_square_closed(x, gamma)?;
            worst = worst.max((rho_gamma_square_integral(x, gamma)? / a - 1.0).abs());
        }
    }
    Ok((worst < 1e-8, format!("max relative difference = {worst:.2e}")))
}

fn sampler_equivalence(seed: u64) -> Result<(bool, String)> {
    let base = EnsembleConfig::wl(1, 6, 6)?;
    let dense = draw_spectra(&base.clone().with_method(SamplingMethod::Dense)?, 2000, seed)?;
    let tri = draw_spectra(&base.with_method(SamplingMethod::Tridiagonal)?, 2000, seed ^ 0x5eed)?;
    let a: Vec<f64> = dense.into_iter().flat_map(|s| s.eigenvalues).collect();
    let mut b: Vec<f64> = tri.into_iter().flat_map(|s| s.eigenvalues).collect();
    b.sort_by(f64::total_cmp);
    let ecdf = |x: f64| b.partition_point(|&y| y <= x) as f64 / b.len() as f64;
    let ks = ks_statistic(&a, ecdf)?;
    Ok((ks <= 0.03, format!("two-sample KS = {ks:.4}")))
}

fn mp_convergence(seed: u64) -> Result<(bool, String)> {
    let config = EnsembleConfig::wl(1, 30, 60)?;
    let report = run_density_experiment(&config, 400, 40, seed)?;
    let ks = report.ks.unwrap_or(1.0);
    Ok((ks <= 0.03, format!("KS to MP(c = 0.5) = {ks:.4}")))
}

fn mean_law(seed: u64) -> Result<(bool, String)> {
    let config = EnsembleConfig::new(1, 10, 40, Some(2.0), Family::InvChi2)?;
    let samples = draw_spectra(&config, 3000, seed)?;
    let (_, check) = pooled_unit_mean(&config, &samples)?;
    let expected = check.expected.unwrap_or(f64::NAN);
    Ok((
        check.within_3_sigma == Some(true),
        format!("grand mean {:.3} vs {expected} (σ = {:.3})", check.observed, check.sigma),
    ))
}

fn surmise_sampling(seed: u64) -> Result<(bool, String)> {
    let config = EnsembleConfig::wl(1, 2, 2)?;
    let values = crate::harness::spacing_values(&config, 2, 5000, seed)?;
    let cdf = cdf_of(SpacingModel::wl2(1, 2, 0.5)?)?;
    let ks = ks_statistic(&values, |x| cdf.eval(x))?;
    Ok((ks <= 0.03, format!("KS of N = 2 spacings to exact law = {ks:.4}")))
}

/// Runs every check in a fixed order.
pub fn run_selfcheck(seed: u64, fault: Option<Fault>) -> Vec<CheckOutcome> {
    vec![
        outcome("gamma recurrence", gamma_recurrence()),
        outcome("bessel recurrence", bessel_recurrence()),
        outcome("tricomi identity", tricomi_identity()),
        outcome("bessel large-order form", bessel_asymptotic()),
        outcome("wd normalization", wd_normalization(fault)),
        outcome("surmise normalization", surmise_normalization()),
        outcome("density normalization", density_normalization()),
        outcome("closed vs integral density", closed_vs_integral()),
        outcome("dense vs tridiagonal sampler", sampler_equivalence(seed)),
        outcome("mp convergence", mp_convergence(seed)),
        outcome("mean eigenvalue law", mean_law(seed)),
        outcome("n = 2 spacing law", surmise_sampling(seed)),
    ]
}

pub fn format_table(outcomes: &[CheckOutcome]) -> String {
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for o in outcomes {
        let flag = if o.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{flag}  {:<width$}  {}\n", o.name, o.detail));
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    out.push_str(&format!("{} checks, {failed} failed\n", outcomes.len()));
    out
}

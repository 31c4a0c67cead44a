//! Monte Carlo experiments: draw spectra, histogram them, compare to theory.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::DensityModel;
use crate::ensembles::{sample, EnsembleConfig, Family, SpectralSample};
use crate::error::{Error, Result};
use crate::rng::RandomStream;
use crate::spacing::{individual_spacing_of, SpacingModel};
use crate::specfun::{try_integrate, QuadratureSpec};

pub const DEFAULT_BINS: usize = 60;
/// Upper histogram edge as a quantile of the pooled values.
pub const RANGE_QUANTILE: f64 = 0.995;
/// Bins below this count are ignored by the deviation metric.
pub const MIN_BIN_COUNT: u64 = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// `counts / (n_values · width)`.
    pub density: Vec<f64>,
    /// All values offered, including those outside the edges.
    pub n_values: u64,
    pub underflow: u64,
    pub overflow: u64,
}

impl Histogram {
    /// Equal-width bins on `[lower, upper]`; the last bin is closed.
    pub fn new(values: &[f64], lower: f64, upper: f64, bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::invalid("histogram needs at least one bin"));
        }
        if !(upper > lower) || !lower.is_finite() || !upper.is_finite() {
            return Err(Error::invalid(format!("bad histogram range [{lower}, {upper}]")));
        }
        if values.is_empty() {
            return Err(Error::invalid("histogram of an empty sample"));
        }
        let width = (upper - lower) / bins as f64;
        let bin_edges: Vec<f64> = (0..=bins).map(|i| if i == bins { upper } else { lower + i as f64 * width }).collect();
        let mut counts = vec![0u64; bins];
        let (mut underflow, mut overflow) = (0, 0);
        for &v in values {
            if v.is_nan() {
                return Err(Error::invalid("NaN in histogram input"));
            }
            if v < lower {
                underflow += 1;
            } else if v > upper {
                overflow += 1;
            } else {
                let i = (((v - lower) / width) as usize).min(bins - 1);
                counts[i] += 1;
            }
        }
        let n_values = values.len() as u64;
        let density = counts
            .iter()
            .zip(bin_edges.windows(2))
            .map(|(&k, e)| k as f64 / (n_values as f64 * (e[1] - e[0])))
            .collect();
        Ok(Self { bin_edges, counts, density, n_values, underflow, overflow })
    }

    /// Bins on `[0, q_{0.995}]` of the values.
    pub fn auto(values: &[f64], bins: usize) -> Result<Self> {
        let upper = quantile(values, RANGE_QUANTILE)?;
        Self::new(values, 0.0, upper, bins)
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn centers(&self) -> Vec<f64> {
        self.bin_edges.windows(2).map(|e| 0.5 * (e[0] + e[1])).collect()
    }

    pub fn mass(&self) -> f64 {
        self.density.iter().zip(self.bin_edges.windows(2)).map(|(d, e)| d * (e[1] - e[0])).sum()
    }
}

/// Empirical quantile by the nearest-rank rule.
pub fn quantile(values: &[f64], q: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::invalid("quantile of an empty sample"));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::invalid(format!("quantile level must lie in [0, 1], got {q}")));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let idx = ((q * v.len() as f64).ceil() as usize).clamp(1, v.len()) - 1;
    Ok(v[idx])
}

/// A theoretical law that can be compared against samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TheoryModel {
    Density(DensityModel),
    Spacing(SpacingModel),
}

impl TheoryModel {
    pub fn label(&self) -> String {
        match self {
            TheoryModel::Density(m) => m.label(),
            TheoryModel::Spacing(m) => m.label(),
        }
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        match self {
            TheoryModel::Density(m) => m.pdf(x),
            TheoryModel::Spacing(m) => {
                if x < 0.0 {
                    Ok(0.0)
                } else {
                    m.pdf(x)
                }
            }
        }
    }

    /// Density of `t = √x`: `2t·p(t²)`, finite at `t = 0` for every model.
    fn sqrt_density(&self, t: f64) -> Result<f64> {
        match self {
            TheoryModel::Density(m) => Ok(2.0 * m.theta(t)?),
            TheoryModel::Spacing(m) => {
                if t == 0.0 {
                    Ok(0.0)
                } else {
                    Ok(2.0 * t * m.pdf(t * t)?)
                }
            }
        }
    }

    fn support(&self) -> (f64, Option<f64>) {
        match self {
            TheoryModel::Density(m) => {
                let s = m.support();
                (s.lower, s.upper)
            }
            TheoryModel::Spacing(_) => (0.0, None),
        }
    }
}

impl From<DensityModel> for TheoryModel {
    fn from(m: DensityModel) -> Self {
        TheoryModel::Density(m)
    }
}

impl From<SpacingModel> for TheoryModel {
    fn from(m: SpacingModel) -> Self {
        TheoryModel::Spacing(m)
    }
}

const CDF_NODES: usize = 768;
const CDF_MASS_TOL: f64 = 1e-6;

/// Cumulative distribution tabulated in `t = √x` with cubic Hermite
/// interpolation between nodes.
#[derive(Clone, Debug)]
pub struct Cdf {
    t: Vec<f64>,
    f: Vec<f64>,
    slope: Vec<f64>,
}

impl Cdf {
    pub fn eval(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        let t = x.max(0.0).sqrt();
        let n = self.t.len();
        if t <= self.t[0] {
            return 0.0;
        }
        if t >= self.t[n - 1] {
            return self.f[n - 1];
        }
        let i = self.t.partition_point(|&ti| ti <= t) - 1;
        let h = self.t[i + 1] - self.t[i];
        let u = (t - self.t[i]) / h;
        let (f0, f1) = (self.f[i], self.f[i + 1]);
        let (d0, d1) = (self.slope[i] * h, self.slope[i + 1] * h);
        let u2 = u * u;
        let u3 = u2 * u;
        let v = (2.0 * u3 - 3.0 * u2 + 1.0) * f0 + (u3 - 2.0 * u2 + u) * d0 + (-2.0 * u3 + 3.0 * u2) * f1 + (u3 - u2) * d1;
        v.clamp(f0, f1)
    }

    /// `F(∞)`.
    pub fn total(&self) -> f64 {
        self.f[self.f.len() - 1]
    }

    /// Points `x` at which the table is anchored.
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        self.t.iter().map(|t| t * t)
    }
}

/// Tabulates the cumulative of `model`; fails if the mass differs from one by more than `1e-6`.
pub fn cdf_of(model: impl Into<TheoryModel>) -> Result<Cdf> {
    let model = model.into();
    let (lower, upper) = model.support();
    let t_lo = lower.sqrt();
    let t_hi = match upper {
        Some(u) => u.sqrt(),
        None => {
            let mut x: f64 = 4.0;
            while x * model.pdf(x)? > 1e-16 {
                x *= 1.5;
                if x > 1e8 {
                    return Err(Error::invalid(format!("{} has no usable tail cut", model.label())));
                }
            }
            x.sqrt()
        }
    };
    let n = CDF_NODES;
    let t: Vec<f64> = (0..n).map(|i| if i == n - 1 { t_hi } else { t_lo + (t_hi - t_lo) * i as f64 / (n - 1) as f64 }).collect();
    let edge = |i: usize| -> Option<f64> {
        match (i, upper) {
            (0, Some(_)) if lower > 0.0 => Some(0.5),
            _ => None,
        }
    };
    let panels: Vec<f64> = (0..n - 1)
        .into_par_iter()
        .map(|i| {
            let mut spec = QuadratureSpec::finite(t[i], t[i + 1]).with_tolerance(1e-10).with_absolute_tolerance(1e-15);
            if let Some(p) = edge(i) {
                spec = spec.with_lower_singularity(p);
            }
            if i == n - 2 && upper.is_some() {
                spec = spec.with_upper_singularity(0.5);
            }
            Ok(try_integrate(|s| model.sqrt_density(s), &spec)?.value)
        })
        .collect::<Result<_>>()?;
    let mut f = Vec::with_capacity(n);
    f.push(0.0);
    for p in &panels {
        let last = *f.last().unwrap();
        f.push(last + p.max(0.0));
    }
    let slope = t
        .iter()
        .map(|&ti| {
            let v = model.sqrt_density(ti)?;
            Ok(if v.is_finite() { v } else { 0.0 })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = f[n - 1];
    if (total - 1.0).abs() > CDF_MASS_TOL {
        return Err(Error::invalid(format!("{} integrates to {total}, not 1", model.label())));
    }
    Ok(Cdf { t, f, slope })
}

/// Two-sided Kolmogorov-Smirnov distance of `values` to `cdf`.
pub fn ks_statistic(values: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::invalid(format!("KS needs at least two values, got {}", values.len())));
    }
    let mut v = values.to_vec();
    if v.iter().any(|x| x.is_nan()) {
        return Err(Error::invalid("NaN in KS input"));
    }
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    let mut d: f64 = 0.0;
    let mut prev = f64::NEG_INFINITY;
    for (i, &x) in v.iter().enumerate() {
        let fx = cdf(x);
        if !(0.0..=1.0 + 1e-9).contains(&fx) {
            return Err(Error::invalid(format!("cdf value {fx} at {x} is not a probability")));
        }
        if fx < prev - 1e-12 {
            return Err(Error::invalid(format!("cdf is not monotone near {x}")));
        }
        prev = fx;
        let i = i as f64;
        d = d.max(((i + 1.0) / n - fx).abs()).max((i / n - fx).abs());
    }
    Ok(d)
}

/// Sup distance between two tabulated cumulatives, checked at both node sets.
pub fn ks_between(a: &Cdf, b: &Cdf) -> f64 {
    a.nodes().chain(b.nodes()).map(|x| (a.eval(x) - b.eval(x)).abs()).fold(0.0, f64::max)
}

/// `R` independent draws; sample `i` uses stream `i` of `seed`.
pub fn draw_spectra(config: &EnsembleConfig, r: usize, seed: u64) -> Result<Vec<SpectralSample>> {
    config.validate()?;
    (0..r as u64)
        .into_par_iter()
        .map(|id| {
            let mut stream = RandomStream::new(seed, id);
            sample(&mut stream, config).map_err(|e| Error::Sampling { stream_id: id, source: Box::new(e) })
        })
        .collect()
}

/// The analytic density matching a family, if one exists.
pub fn density_theory(config: &EnsembleConfig) -> Result<Option<DensityModel>> {
    match (config.family, config.gamma) {
        (Family::Wl, _) => Ok(Some(DensityModel::mp(config.c())?)),
        (Family::InvChi2, Some(g)) => Ok(Some(DensityModel::gen(g, config.c())?)),
        _ => Ok(None),
    }
}

/// The spacing law matching a family, if one exists.
pub fn spacing_theory(config: &EnsembleConfig) -> Result<Option<SpacingModel>> {
    match (config.family, config.gamma) {
        (Family::Wl, _) if config.n == 2 => Ok(Some(SpacingModel::wl2(config.beta, config.m, 0.5)?)),
        (Family::Wl, _) => Ok(Some(SpacingModel::wd(config.beta)?)),
        (Family::InvChi2, Some(g)) => Ok(Some(SpacingModel::gen(config.beta, g)?)),
        _ => Ok(None),
    }
}

/// Grand mean of the raw eigenvalues against its predicted value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanCheck {
    pub observed: f64,
    pub expected: Option<f64>,
    /// Monte Carlo standard error of `observed`.
    pub sigma: f64,
    pub within_3_sigma: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: EnsembleConfig,
    pub seed: u64,
    #[serde(rename = "R")]
    pub r: usize,
    /// Spacing index for spacing experiments.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub density: Vec<f64>,
    pub n_values: u64,
    pub overflow: u64,
    pub theory: Option<String>,
    pub theory_x: Vec<f64>,
    pub theory_y: Vec<f64>,
    pub ks: Option<f64>,
    pub chi2_per_bin: Option<f64>,
    /// Largest `|histogram − bin-averaged theory|` over bins with at least 100 counts.
    pub max_deviation: Option<f64>,
    pub qualifying_bins: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_check: Option<MeanCheck>,
    pub runtime_seconds: f64,
}

impl ExperimentReport {
    pub fn histogram(&self) -> Histogram {
        Histogram {
            bin_edges: self.bin_edges.clone(),
            counts: self.counts.clone(),
            density: self.density.clone(),
            n_values: self.n_values,
            underflow: 0,
            overflow: self.overflow,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::invalid(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(e.to_string()))
    }
}

struct Comparison {
    ks: f64,
    chi2_per_bin: f64,
    max_deviation: Option<f64>,
    qualifying_bins: usize,
    theory_y: Vec<f64>,
}

fn compare(values: &[f64], hist: &Histogram, model: TheoryModel) -> Result<Comparison> {
    let cdf = cdf_of(model)?;
    let ks = ks_statistic(values, |x| cdf.eval(x))?;
    let n = hist.n_values as f64;
    let (mut max_dev, mut qualifying) = (None::<f64>, 0);
    let (mut chi2, mut chi_bins) = (0.0, 0usize);
    for (i, e) in hist.bin_edges.windows(2).enumerate() {
        let p = cdf.eval(e[1]) - cdf.eval(e[0]);
        let expected = n * p;
        if expected >= 5.0 {
            chi2 += (hist.counts[i] as f64 - expected).powi(2) / expected;
            chi_bins += 1;
        }
        if hist.counts[i] >= MIN_BIN_COUNT {
            let dev = (hist.density[i] - p / (e[1] - e[0])).abs();
            max_dev = Some(max_dev.map_or(dev, |m| m.max(dev)));
            qualifying += 1;
        }
    }
    let theory_y = hist.centers().into_iter().map(|x| model.pdf(x)).collect::<Result<_>>()?;
    Ok(Comparison {
        ks,
        chi2_per_bin: if chi_bins > 0 { chi2 / chi_bins as f64 } else { f64::NAN },
        max_deviation: max_dev,
        qualifying_bins: qualifying,
        theory_y,
    })
}

fn build_report(
    config: &EnsembleConfig,
    r: usize,
    seed: u64,
    k: Option<usize>,
    values: &[f64],
    bins: usize,
    theory: Option<TheoryModel>,
    mean_check: Option<MeanCheck>,
    start: Instant,
) -> Result<ExperimentReport> {
    let hist = Histogram::auto(values, bins)?;
    let centers = hist.centers();
    let cmp = theory.map(|t| compare(values, &hist, t)).transpose()?;
    let (theory_x, theory_y) = match &cmp {
        Some(c) => (centers, c.theory_y.clone()),
        None => (Vec::new(), Vec::new()),
    };
    Ok(ExperimentReport {
        config: config.clone(),
        seed,
        r,
        k,
        bin_edges: hist.bin_edges,
        counts: hist.counts,
        density: hist.density,
        n_values: hist.n_values,
        overflow: hist.overflow,
        theory: theory.map(|t| t.label()),
        theory_x,
        theory_y,
        ks: cmp.as_ref().map(|c| c.ks),
        chi2_per_bin: cmp.as_ref().map(|c| c.chi2_per_bin).filter(|v| v.is_finite()),
        max_deviation: cmp.as_ref().and_then(|c| c.max_deviation),
        qualifying_bins: cmp.as_ref().map_or(0, |c| c.qualifying_bins),
        mean_check,
        runtime_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Pooled eigenvalues divided by their grand mean, plus the raw mean check.
pub fn pooled_unit_mean(config: &EnsembleConfig, samples: &[SpectralSample]) -> Result<(Vec<f64>, MeanCheck)> {
    let per_sample: Vec<f64> =
        samples.iter().map(|s| s.eigenvalues.iter().sum::<f64>() / s.eigenvalues.len() as f64).collect();
    let r = per_sample.len() as f64;
    let grand = per_sample.iter().sum::<f64>() / r;
    if !(grand > 0.0) || !grand.is_finite() {
        return Err(Error::invalid(format!("grand mean {grand} cannot be rescaled")));
    }
    let var = per_sample.iter().map(|m| (m - grand).powi(2)).sum::<f64>() / (r - 1.0).max(1.0);
    let sigma = (var / r).sqrt();
    let expected = config.mean_eigenvalue();
    let check = MeanCheck {
        observed: grand,
        expected,
        sigma,
        within_3_sigma: expected.map(|e| (grand - e).abs() <= 3.0 * sigma),
    };
    let values = samples.iter().flat_map(|s| s.eigenvalues.iter().map(|x| x / grand)).collect();
    Ok((values, check))
}

/// Eigenvalue-density experiment over `r` samples drawn from `seed`.
pub fn run_density_experiment(config: &EnsembleConfig, r: usize, bins: usize, seed: u64) -> Result<ExperimentReport> {
    if r < 100 {
        return Err(Error::invalid(format!("density experiments need R >= 100, got {r}")));
    }
    let start = Instant::now();
    let theory = density_theory(config)?.map(TheoryModel::from);
    let samples = draw_spectra(config, r, seed)?;
    let (values, check) = pooled_unit_mean(config, &samples)?;
    build_report(config, r, seed, None, &values, bins, theory, Some(check), start)
}

/// Normalised `k`-th spacings of `r` samples drawn from `seed`.
pub fn spacing_values(config: &EnsembleConfig, k: usize, r: usize, seed: u64) -> Result<Vec<f64>> {
    config.validate()?;
    if k < 2 || k > config.n {
        return Err(Error::invalid(format!("spacing index k must satisfy 2 <= k <= {}, got {k}", config.n)));
    }
    let samples = draw_spectra(config, r, seed)?;
    let spectra: Vec<&[f64]> = samples.iter().map(|s| s.eigenvalues.as_slice()).collect();
    individual_spacing_of(&spectra, k)
}

/// Spacing experiment at location `k`; `theory` defaults to the family's own law.
pub fn run_spacing_experiment(
    config: &EnsembleConfig,
    k: usize,
    r: usize,
    bins: usize,
    seed: u64,
    theory: Option<SpacingModel>,
) -> Result<ExperimentReport> {
    if r < 10_000 {
        return Err(Error::invalid(format!("spacing experiments need R >= 10^4, got {r}")));
    }
    let start = Instant::now();
    let theory = match theory {
        Some(t) => Some(t),
        None => spacing_theory(config)?,
    };
    let values = spacing_values(config, k, r, seed)?;
    build_report(config, r, seed, Some(k), &values, bins, theory.map(TheoryModel::from), None, start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacing::wd1_cdf;

    #[test]
    fn histogram_mass_and_counts() {
        let v: Vec<f64> = (0..1000).map(|i| i as f64 / 999.0).collect();
        let h = Histogram::new(&v, 0.0, 1.0, 7).unwrap();
        assert_eq!(h.counts.iter().sum::<u64>(), 1000);
        assert!((h.mass() - 1.0).abs() < 1e-12);
        let h = Histogram::new(&v, 0.0, 0.5, 5).unwrap();
        assert_eq!(h.counts.iter().sum::<u64>() + h.overflow, 1000);
        assert!(h.mass() < 1.0);
        assert!(Histogram::new(&v, 1.0, 1.0, 5).is_err());
        assert!(Histogram::new(&[], 0.0, 1.0, 5).is_err());
    }

    #[test]
    fn ks_simple_cases() {
        assert!(ks_statistic(&[], |x| x).is_err());
        let d = ks_statistic(&[0.5, 0.5], |x: f64| x.clamp(0.0, 1.0)).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
        assert!(ks_statistic(&[0.1, 0.2, 0.3], |x| 1.0 - x).is_err());
    }

    #[test]
    fn ks_of_own_draws_is_small() {
        let mut s = RandomStream::new(11, 0);
        let v: Vec<f64> = (0..100_000).map(|_| s.uniform()).collect();
        assert!(ks_statistic(&v, |x| x.clamp(0.0, 1.0)).unwrap() <= 0.006);
    }

    #[test]
    fn cdf_mp_reaches_one_at_edge() {
        let cdf = cdf_of(DensityModel::mp(1.0).unwrap()).unwrap();
        assert!((cdf.eval(4.0) - 1.0).abs() < 1e-6);
        assert_eq!(cdf.eval(-1.0), 0.0);
        let cdf = cdf_of(DensityModel::mp(0.4).unwrap()).unwrap();
        assert!((cdf.total() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn cdf_gen_square_matches_direct_integral() {
        let m = DensityModel::gen_square(2.0).unwrap();
        let cdf = cdf_of(m).unwrap();
        let spec = QuadratureSpec::finite(0.0, 1.0).with_tolerance(1e-12).with_lower_singularity(-0.5);
        let direct = try_integrate(|x| m.pdf(x), &spec).unwrap().value;
        assert!((cdf.eval(1.0) - direct).abs() < 1e-8);
    }

    #[test]
    fn cdf_wd_matches_closed_form() {
        let cdf = cdf_of(SpacingModel::wd(1).unwrap()).unwrap();
        for s in [0.05, 0.3, 0.77, 1.0, 1.9, 3.0] {
            assert!((cdf.eval(s) - wd1_cdf(s)).abs() < 1e-8, "s = {s}");
        }
    }

    #[test]
    fn ks_between_identical_is_zero() {
        let a = cdf_of(SpacingModel::wd(1).unwrap()).unwrap();
        assert_eq!(ks_between(&a, &a), 0.0);
        let b = cdf_of(SpacingModel::wd(2).unwrap()).unwrap();
        assert!(ks_between(&a, &b) > 0.01);
    }

    #[test]
    fn sampling_errors_carry_stream() {
        let mut config = EnsembleConfig::wl(1, 3, 3).unwrap();
        config.n = 5;
        assert!(draw_spectra(&config, 10, 0).is_err());
    }

    #[test]
    fn draws_do_not_depend_on_thread_count() {
        let config = EnsembleConfig::new(1, 4, 6, Some(3.0), Family::InvChi2).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| run_density_experiment(&config, 500, 20, 9).unwrap())
        };
        let (a, b) = (run(1), run(8));
        assert_eq!(a.counts, b.counts);
        assert_eq!(a.bin_edges, b.bin_edges);
        assert_eq!(a.ks, b.ks);
    }

    #[test]
    fn report_round_trips_through_json() {
        let config = EnsembleConfig::wl(1, 3, 5).unwrap();
        let rep = run_density_experiment(&config, 200, 10, 1).unwrap();
        let text = rep.to_json().unwrap();
        let back = ExperimentReport::from_json(&text).unwrap();
        assert_eq!(back, rep);
        assert_eq!(back.to_json().unwrap(), text);
        assert!(text.contains("\"R\""));
    }

    #[test]
    fn rejects_small_runs() {
        let config = EnsembleConfig::wl(1, 3, 5).unwrap();
        assert!(run_density_experiment(&config, 99, 10, 1).is_err());
        assert!(run_spacing_experiment(&config, 2, 100, 10, 1, None).is_err());
        assert!(spacing_values(&config, 1, 200, 1).is_err());
    }
}

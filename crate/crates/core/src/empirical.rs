//! Covariance spectra of return series and least-squares fits of γ.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::density::{mp_density, DensityModel};
use crate::eigen::{symmetric_eigenvalues, SymmetricMatrix, DEFAULT_TOL};
use crate::ensembles::EnsembleConfig;
use crate::error::{Error, Result};
use crate::harness::{draw_spectra, Histogram};
use crate::rng::RandomStream;

#[derive(Clone, Debug, PartialEq)]
pub struct ReturnsMatrix {
    /// Observations (time).
    pub t_rows: usize,
    /// Assets.
    pub n_cols: usize,
    /// Row-major, `t_rows × n_cols`.
    pub values: Vec<f64>,
    pub labels: Vec<String>,
}

impl ReturnsMatrix {
    pub fn new(t_rows: usize, n_cols: usize, values: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        if values.len() != t_rows * n_cols || labels.len() != n_cols {
            return Err(Error::invalid("returns matrix dimensions do not match its data"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("returns must be finite"));
        }
        Ok(Self { t_rows, n_cols, values, labels })
    }

    /// `true` when there are more assets than observations.
    pub fn is_wide(&self) -> bool {
        self.n_cols > self.t_rows
    }

    pub fn c(&self) -> f64 {
        self.n_cols as f64 / self.t_rows as f64
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let io = |e: csv::Error| Error::Parse { path: path.to_path_buf(), message: e.to_string() };
        let mut w = csv::Writer::from_path(path).map_err(io)?;
        w.write_record(&self.labels).map_err(io)?;
        for row in self.values.chunks(self.n_cols) {
            w.write_record(row.iter().map(|v| format!("{v:e}"))).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Io { path: path.to_path_buf(), source: e })
    }
}

fn open_csv(path: &Path) -> Result<csv::Reader<std::fs::File>> {
    let file = std::fs::File::open(path).map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
    Ok(csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(file))
}

fn parse_cell(path: &Path, cell: &str, row: usize, column: &str) -> Result<f64> {
    match cell.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::Parse {
            path: path.to_path_buf(),
            message: format!("row {row}, column {column:?}: cannot use {cell:?} as a finite number"),
        }),
    }
}

/// Reads a header row of asset labels followed by one row per observation.
pub fn load_returns_csv(path: impl AsRef<Path>) -> Result<ReturnsMatrix> {
    let path = path.as_ref();
    let mut reader = open_csv(path)?;
    let parse_err = |e: csv::Error| Error::Parse { path: path.to_path_buf(), message: e.to_string() };
    let labels: Vec<String> = reader.headers().map_err(parse_err)?.iter().map(str::to_owned).collect();
    if labels.is_empty() || labels.iter().all(|l| l.is_empty()) {
        return Err(Error::Parse { path: path.to_path_buf(), message: "missing header row".into() });
    }
    let mut values = Vec::new();
    let mut t_rows = 0;
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(parse_err)?;
        // data rows are numbered from 1, after the header
        let row = i + 1;
        if record.len() != labels.len() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                message: format!("row {row}: expected {} cells, found {}", labels.len(), record.len()),
            });
        }
        for (cell, label) in record.iter().zip(&labels) {
            values.push(parse_cell(path, cell, row, label)?);
        }
        t_rows += 1;
    }
    if t_rows == 0 {
        return Err(Error::Parse { path: path.to_path_buf(), message: "no data rows".into() });
    }
    ReturnsMatrix::new(t_rows, labels.len(), values, labels)
}

/// Reads a single-column list of eigenvalues (header `eigenvalue`).
pub fn load_spectrum_csv(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    let mut reader = open_csv(path)?;
    let parse_err = |e: csv::Error| Error::Parse { path: path.to_path_buf(), message: e.to_string() };
    let header = reader.headers().map_err(parse_err)?.get(0).unwrap_or("").to_owned();
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(parse_err)?;
        out.push(parse_cell(path, record.get(0).unwrap_or(""), i + 1, &header)?);
    }
    if out.is_empty() {
        return Err(Error::Parse { path: path.to_path_buf(), message: "no data rows".into() });
    }
    Ok(out)
}

pub fn write_spectrum_csv(path: impl AsRef<Path>, eigenvalues: &[f64]) -> Result<()> {
    let path = path.as_ref();
    let io = |e: csv::Error| Error::Parse { path: path.to_path_buf(), message: e.to_string() };
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["eigenvalue"]).map_err(io)?;
    for v in eigenvalues {
        w.write_record([format!("{v:e}")]).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io { path: path.to_path_buf(), source: e })
}

/// `C = XᵀX / T` of the column-standardised data; its trace equals `n_cols`.
pub fn correlation_matrix(data: &ReturnsMatrix) -> Result<SymmetricMatrix> {
    let (t, n) = (data.t_rows, data.n_cols);
    if n < 2 {
        return Err(Error::invalid(format!("need at least two assets, got {n}")));
    }
    if t <= n {
        return Err(Error::invalid(format!("need more observations than assets, got T = {t}, N = {n}")));
    }
    let mut x = data.values.clone();
    for j in 0..n {
        let mean = (0..t).map(|i| x[i * n + j]).sum::<f64>() / t as f64;
        let var = (0..t).map(|i| (x[i * n + j] - mean).powi(2)).sum::<f64>() / t as f64;
        if !(var > 0.0) {
            return Err(Error::invalid(format!("column {:?} has zero variance", data.labels[j])));
        }
        let sd = var.sqrt();
        for i in 0..t {
            x[i * n + j] = (x[i * n + j] - mean) / sd;
        }
    }
    let mut c = SymmetricMatrix::gram(t, n, &x);
    for i in 0..n {
        for j in 0..=i {
            c.set(i, j, c.get(i, j) / t as f64);
        }
    }
    Ok(c)
}

/// Ascending eigenvalues of the correlation matrix, rescaled to unit mean.
pub fn covariance_spectrum(data: &ReturnsMatrix) -> Result<Vec<f64>> {
    let c = correlation_matrix(data)?;
    let ev = symmetric_eigenvalues(&c, DEFAULT_TOL)?;
    Ok(unit_mean(&ev))
}

fn unit_mean(values: &[f64]) -> Vec<f64> {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values.iter().map(|v| v / mean).collect()
}

/// Drops the `k` largest values and rescales the rest to unit mean.
pub fn trim_top(eigenvalues: &[f64], k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if k >= eigenvalues.len() {
        return Err(Error::invalid(format!("cannot trim {k} of {} eigenvalues", eigenvalues.len())));
    }
    let mut sorted = eigenvalues.to_vec();
    sorted.sort_by(f64::total_cmp);
    let removed = sorted.split_off(sorted.len() - k);
    if k == 0 {
        return Ok((eigenvalues.to_vec(), removed));
    }
    if !(sorted.iter().sum::<f64>() > 0.0) {
        return Err(Error::invalid("kept eigenvalues have no positive mass"));
    }
    Ok((unit_mean(&sorted), removed))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FitFamily {
    Mp,
    InvChi2,
    Chi2Mc,
}

impl std::str::FromStr for FitFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mp" => Ok(FitFamily::Mp),
            "invchi2" | "inv_chi2" => Ok(FitFamily::InvChi2),
            "chi2mc" | "chi2_mc" => Ok(FitFamily::Chi2Mc),
            other => Err(Error::invalid(format!("unknown fit family {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub family: FitFamily,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma_hat: Option<f64>,
    pub c: f64,
    /// Mean squared difference between histogram and model density.
    pub objective: f64,
    pub trimmed: usize,
    pub fit_x: Vec<f64>,
    pub fit_y: Vec<f64>,
}

pub const GAMMA_MIN: f64 = 0.1;
pub const GAMMA_MAX: f64 = 1e3;
const COARSE_POINTS: usize = 20;
const MC_DRAWS: usize = 4000;

#[derive(Clone, Debug, PartialEq)]
pub struct GoldenSearch {
    pub x: f64,
    pub fx: f64,
    /// Best objective after each iteration.
    pub history: Vec<f64>,
}

/// Golden-section minimisation of `f` on `[a, b]` down to a bracket of width `tol`.
pub fn golden_section(mut f: impl FnMut(f64) -> Result<f64>, a: f64, b: f64, tol: f64) -> Result<GoldenSearch> {
    if !(b > a) || !(tol > 0.0) {
        return Err(Error::invalid(format!("bad golden-section bracket [{a}, {b}]")));
    }
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (a, b);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    let mut history = vec![f1.min(f2)];
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2)?;
        }
        let best = f1.min(f2).min(*history.last().unwrap());
        history.push(best);
    }
    let (x, fx) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    Ok(GoldenSearch { x, fx, history })
}

/// Unit-mass histogram used for fitting: `[0, max]` in `√count` bins (10 to 60).
pub fn fit_histogram(eigenvalues: &[f64]) -> Result<Histogram> {
    let x = unit_mean(eigenvalues);
    let max = x.iter().copied().fold(0.0, f64::max);
    let bins = ((x.len() as f64).sqrt() as usize).clamp(10, 60);
    let h = Histogram::new(&x, 0.0, max, bins)?;
    if h.counts.iter().filter(|&&k| k > 0).count() < 2 {
        return Err(Error::invalid("degenerate histogram: all eigenvalues fall in one bin"));
    }
    Ok(h)
}

fn mse(h: &Histogram, centers: &[f64], model: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let mut s = 0.0;
    for (d, &x) in h.density.iter().zip(centers) {
        s += (d - model(x)?).powi(2);
    }
    Ok(s / centers.len() as f64)
}

/// Large-`N` density of the χ² family by conditional Monte Carlo over `ξ`.
///
/// Given `ξ` the spectrum is Marchenko-Pastur stretched by `a ∝ 1/ξ`; the
/// stretches are normalised to sample mean one.
#[derive(Clone, Debug)]
pub struct Chi2McDensity {
    c: f64,
    scales: Vec<f64>,
}

impl Chi2McDensity {
    pub fn new(gamma: f64, c: f64, seed: u64) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::domain(format!("c must lie in (0, 1], got {c}")));
        }
        let mut stream = RandomStream::new(seed, 0);
        let mut scales = (0..MC_DRAWS).map(|_| Ok(1.0 / stream.gamma_variate(gamma, 1.0)?)).collect::<Result<Vec<f64>>>()?;
        let mean = scales.iter().sum::<f64>() / scales.len() as f64;
        scales.iter_mut().for_each(|a| *a /= mean);
        Ok(Self { c, scales })
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        let mut s = 0.0;
        for &a in &self.scales {
            s += mp_density(x / a, self.c)? / a;
        }
        Ok(s / self.scales.len() as f64)
    }
}

/// Least-squares fit of the family density to the eigenvalue histogram.
pub fn fit_gamma(eigenvalues: &[f64], c: f64, family: FitFamily, seed: u64) -> Result<FitResult> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::invalid(format!("c must lie in (0, 1), got {c}")));
    }
    if eigenvalues.len() < 50 {
        return Err(Error::invalid(format!("need at least 50 eigenvalues, got {}", eigenvalues.len())));
    }
    if eigenvalues.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("eigenvalues must be finite"));
    }
    let h = fit_histogram(eigenvalues)?;
    let centers = h.centers();
    let curve = |pdf: &dyn Fn(f64) -> Result<f64>| centers.iter().map(|&x| pdf(x)).collect::<Result<Vec<_>>>();
    let finish = |gamma_hat, objective, fit_y| FitResult {
        family,
        gamma_hat,
        c,
        objective,
        trimmed: 0,
        fit_x: centers.clone(),
        fit_y,
    };
    if family == FitFamily::Mp {
        let pdf = |x| mp_density(x, c);
        let objective = mse(&h, &centers, pdf)?;
        return Ok(finish(None, objective, curve(&pdf)?));
    }
    let objective = |lg: f64| -> Result<f64> {
        let g = lg.exp();
        match family {
            FitFamily::InvChi2 => {
                let m = DensityModel::gen_rect(g, c)?;
                mse(&h, &centers, |x| m.pdf(x))
            }
            _ => {
                let m = Chi2McDensity::new(g, c, seed)?;
                mse(&h, &centers, |x| m.pdf(x))
            }
        }
    };
    let (lo, hi) = (GAMMA_MIN.ln(), GAMMA_MAX.ln());
    let grid: Vec<f64> = (0..COARSE_POINTS).map(|i| lo + (hi - lo) * i as f64 / (COARSE_POINTS - 1) as f64).collect();
    let values = grid.iter().map(|&lg| objective(lg)).collect::<Result<Vec<_>>>()?;
    let best = (0..grid.len()).min_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap();
    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(grid.len() - 1)];
    let search = golden_section(objective, a, b, 1e-4)?;
    let (lg, fx) = if values[best] < search.fx { (grid[best], values[best]) } else { (search.x, search.fx) };
    let g = lg.exp();
    let fit_y = match family {
        FitFamily::InvChi2 => {
            let m = DensityModel::gen_rect(g, c)?;
            curve(&|x| m.pdf(x))?
        }
        _ => {
            let m = Chi2McDensity::new(g, c, seed)?;
            curve(&|x| m.pdf(x))?
        }
    };
    Ok(finish(Some(g), fx, fit_y))
}

/// Spectrum file in, trimmed fit out.
pub fn fit_spectrum(eigenvalues: &[f64], c: f64, family: FitFamily, trim: usize, seed: u64) -> Result<FitResult> {
    let (kept, _) = trim_top(eigenvalues, trim)?;
    let mut fit = fit_gamma(&kept, c, family, seed)?;
    fit.trimmed = trim;
    Ok(fit)
}

/// Covariance pipeline on a returns matrix.
pub fn fit_returns(data: &ReturnsMatrix, family: FitFamily, trim: usize, seed: u64) -> Result<FitResult> {
    let spectrum = covariance_spectrum(data)?;
    fit_spectrum(&spectrum, data.c(), family, trim, seed)
}

/// Raw eigenvalues of `r` ensemble draws, pooled in sample order.
pub fn synthetic_spectrum(config: &EnsembleConfig, r: usize, seed: u64) -> Result<Vec<f64>> {
    Ok(draw_spectra(config, r, seed)?.into_iter().flat_map(|s| s.eigenvalues).collect())
}

/// Gaussian returns `r_{ti} = f·z_t + ε_{ti}` with a common factor loading `f`.
pub fn synthetic_returns(t_rows: usize, n_cols: usize, factor: f64, seed: u64) -> Result<ReturnsMatrix> {
    if t_rows == 0 || n_cols == 0 {
        return Err(Error::invalid("synthetic returns need positive dimensions"));
    }
    let mut s = RandomStream::new(seed, 0);
    let mut values = Vec::with_capacity(t_rows * n_cols);
    for _ in 0..t_rows {
        let z = s.standard_normal();
        for _ in 0..n_cols {
            values.push(factor * z + s.standard_normal());
        }
    }
    let labels = (1..=n_cols).map(|i| format!("asset{i}")).collect();
    ReturnsMatrix::new(t_rows, n_cols, values, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::mp_bounds;
    use crate::ensembles::Family;
    use std::io::Write;

    fn write(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn loads_small_csv() {
        let f = write("a,b\n1,2\n3,4\n5,6.5\n");
        let m = load_returns_csv(f.path()).unwrap();
        assert_eq!((m.t_rows, m.n_cols), (3, 2));
        assert_eq!(m.values[5], 6.5);
        assert_eq!(m.labels, ["a", "b"]);
    }

    #[test]
    fn csv_errors_name_location() {
        let f = write("a,b\n");
        assert!(load_returns_csv(f.path()).unwrap_err().to_string().contains("no data rows"));
        let f = write("a,b\n1,2\n3,NaN\n");
        let msg = load_returns_csv(f.path()).unwrap_err().to_string();
        assert!(msg.contains("row 2") && msg.contains("\"b\""), "{msg}");
        assert!(matches!(load_returns_csv("/no/such/file.csv"), Err(Error::Io { .. })));
    }

    #[test]
    fn gaussian_spectrum_sits_in_mp_support() {
        let data = synthetic_returns(200, 50, 0.0, 3).unwrap();
        let ev = covariance_spectrum(&data).unwrap();
        let (xm, xp) = mp_bounds(0.25);
        let (lo, hi) = (0.25 * xm, 0.25 * xp);
        let inside = ev.iter().filter(|&&x| x >= lo && x <= hi).count();
        assert!(inside as f64 >= 0.98 * ev.len() as f64, "{inside}");
    }

    #[test]
    fn correlation_trace_is_n() {
        let data = synthetic_returns(80, 7, 0.5, 4).unwrap();
        let c = correlation_matrix(&data).unwrap();
        assert!((c.trace() - 7.0).abs() < 1e-9);
    }

    #[test]
    fn correlated_pair_is_rank_deficient() {
        let values: Vec<f64> = (0..40).flat_map(|i| {
            let x = (i as f64 * 0.7).sin();
            [x, 2.0 * x]
        }).collect();
        let m = ReturnsMatrix::new(40, 2, values, vec!["x".into(), "y".into()]).unwrap();
        let ev = covariance_spectrum(&m).unwrap();
        assert!(ev[0].abs() < 1e-9 && (ev[1] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn covariance_rejects_bad_input() {
        let one = ReturnsMatrix::new(3, 1, vec![1.0, 2.0, 3.0], vec!["a".into()]).unwrap();
        assert!(covariance_spectrum(&one).is_err());
        let flat = ReturnsMatrix::new(3, 2, vec![1.0, 1.0, 2.0, 1.0, 3.0, 1.0], vec!["a".into(), "b".into()]).unwrap();
        assert!(covariance_spectrum(&flat).unwrap_err().to_string().contains("\"b\""));
    }

    #[test]
    fn trimming() {
        let (kept, removed) = trim_top(&[1.0, 2.0, 10.0], 1).unwrap();
        assert!((kept[0] - 2.0 / 3.0).abs() < 1e-15 && (kept[1] - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(removed, [10.0]);
        let (kept, removed) = trim_top(&[3.0, 1.0], 0).unwrap();
        assert_eq!(kept, [3.0, 1.0]);
        assert!(removed.is_empty());
        assert!(trim_top(&[1.0], 1).is_err());
    }

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let g = golden_section(|x| Ok((x - 0.3).powi(2)), -1.0, 2.0, 1e-8).unwrap();
        assert!((g.x - 0.3).abs() < 1e-7);
        assert!(g.history.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn fit_rejects_bad_c_and_tiny_input() {
        let ev: Vec<f64> = (1..=60).map(|i| i as f64).collect();
        assert!(fit_gamma(&ev, 1.0, FitFamily::Mp, 0).is_err());
        assert!(fit_gamma(&ev[..10], 0.5, FitFamily::Mp, 0).is_err());
        let mp = fit_gamma(&ev, 0.5, FitFamily::Mp, 0).unwrap();
        assert!(mp.gamma_hat.is_none());
    }

    #[test]
    fn fit_recovers_generating_gamma() {
        let config = EnsembleConfig::new(1, 50, 200, Some(2.0), Family::InvChi2).unwrap();
        let fits: Vec<f64> = (0..8)
            .map(|seed| {
                let ev = synthetic_spectrum(&config, 200, seed).unwrap();
                fit_gamma(&ev, 0.25, FitFamily::InvChi2, 0).unwrap().gamma_hat.unwrap()
            })
            .collect();
        let mean = fits.iter().sum::<f64>() / fits.len() as f64;
        assert!((1.7..=2.3).contains(&mean), "{fits:?}");
    }

    #[test]
    fn fit_ignores_overall_scale() {
        let config = EnsembleConfig::new(1, 20, 60, Some(3.0), Family::InvChi2).unwrap();
        let ev = synthetic_spectrum(&config, 100, 5).unwrap();
        let scaled: Vec<f64> = ev.iter().map(|x| 7.0 * x).collect();
        for family in [FitFamily::InvChi2, FitFamily::Chi2Mc] {
            let a = fit_gamma(&ev, 1.0 / 3.0, family, 0).unwrap();
            let b = fit_gamma(&scaled, 1.0 / 3.0, family, 0).unwrap();
            assert_eq!(a.gamma_hat, b.gamma_hat);
        }
    }

    #[test]
    fn chi2_mc_density_has_unit_mass() {
        let m = Chi2McDensity::new(5.0, 0.25, 1).unwrap();
        let n = 4000;
        let h = 8.0 / n as f64;
        let mass: f64 = (0..n).map(|i| m.pdf((i as f64 + 0.5) * h).unwrap() * h).sum();
        assert!((mass - 1.0).abs() < 2e-3, "{mass}");
    }
}

//! Matrix-level samplers for Wishart-Laguerre ensembles and their
//! superstatistical mixtures.

use serde::{Deserialize, Serialize};

pub use crate::eigen::TridiagonalMatrix;
use crate::eigen::{eigenvalues_tridiag, symmetric_eigenvalues, SymmetricMatrix, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::rng::RandomStream;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Plain Wishart-Laguerre, no mixing.
    Wl,
    /// Inverse-χ² mixing of the inverse variance.
    InvChi2,
    /// χ² mixing.
    Chi2,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Wl => "wl",
            Family::InvChi2 => "invchi2",
            Family::Chi2 => "chi2",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wl" => Ok(Family::Wl),
            "invchi2" | "inv_chi2" => Ok(Family::InvChi2),
            "chi2" => Ok(Family::Chi2),
            other => Err(Error::invalid(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingMethod {
    /// Dense for β ∈ {1, 2}, tridiagonal for β = 4.
    #[default]
    Auto,
    Dense,
    Tridiagonal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub beta: u32,
    pub n: usize,
    pub m: usize,
    /// `None` stands for γ = ∞ (undeformed WL).
    pub gamma: Option<f64>,
    pub family: Family,
    #[serde(default)]
    pub method: SamplingMethod,
}

impl EnsembleConfig {
    pub fn new(beta: u32, n: usize, m: usize, gamma: Option<f64>, family: Family) -> Result<Self> {
        let config = Self { beta, n, m, gamma, family, method: SamplingMethod::Auto };
        config.validate()?;
        Ok(config)
    }

    pub fn wl(beta: u32, n: usize, m: usize) -> Result<Self> {
        Self::new(beta, n, m, None, Family::Wl)
    }

    pub fn with_method(mut self, method: SamplingMethod) -> Result<Self> {
        self.method = method;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_beta(self.beta)?;
        if self.n < 2 || self.n > self.m {
            return Err(Error::invalid(format!("need 2 <= n <= m, got n = {}, m = {}", self.n, self.m)));
        }
        match (self.family, self.gamma) {
            (Family::Wl, None) => {}
            (Family::Wl, Some(_)) => return Err(Error::invalid("gamma is meaningless for the wl family")),
            (_, None) => return Err(Error::invalid(format!("family {} needs gamma", self.family.as_str()))),
            (_, Some(g)) if !(g > 0.0) || !g.is_finite() => {
                return Err(Error::invalid(format!("gamma must be a finite positive number, got {g}")))
            }
            _ => {}
        }
        if self.method == SamplingMethod::Dense && self.beta == 4 {
            return Err(Error::invalid("dense sampling supports beta 1 and 2 only"));
        }
        Ok(())
    }

    pub fn c(&self) -> f64 {
        self.n as f64 / self.m as f64
    }

    fn uses_dense(&self) -> bool {
        match self.method {
            SamplingMethod::Auto => self.beta != 4,
            SamplingMethod::Dense => true,
            SamplingMethod::Tridiagonal => false,
        }
    }

    /// Expected eigenvalue before any rescaling; `None` when it diverges.
    pub fn mean_eigenvalue(&self) -> Option<f64> {
        let m = self.m as f64;
        match (self.family, self.gamma) {
            (Family::Wl, _) => Some(m * self.beta as f64),
            (Family::InvChi2, Some(g)) => Some(m * (g + 1.0) / (2.0 * g)),
            (Family::Chi2, Some(g)) if g > 1.0 => Some(m * g / (2.0 * (g - 1.0))),
            _ => None,
        }
    }
}

fn check_beta(beta: u32) -> Result<()> {
    if matches!(beta, 1 | 2 | 4) {
        Ok(())
    } else {
        Err(Error::invalid(format!("beta must be 1, 2 or 4, got {beta}")))
    }
}

/// One draw: the mixing variable and the ascending spectrum of `X†X`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralSample {
    pub xi: f64,
    pub eigenvalues: Vec<f64>,
}

fn positive(eigenvalues: Vec<f64>) -> Result<Vec<f64>> {
    match eigenvalues.iter().find(|&&x| !(x > 0.0)) {
        Some(x) => Err(Error::domain(format!("non-positive eigenvalue {x} from a Gram matrix"))),
        None => Ok(eigenvalues),
    }
}

/// Dense Gaussian `X` (`m × n`), every real component `N(0, 1/(2βη))`.
pub fn sample_wl_dense(stream: &mut RandomStream, beta: u32, n: usize, m: usize, eta: f64) -> Result<SpectralSample> {
    if beta == 4 {
        return Err(Error::invalid("beta = 4 has no dense sampler; use the tridiagonal model"));
    }
    check_beta(beta)?;
    if n < 1 || n > m {
        return Err(Error::invalid(format!("need 1 <= n <= m, got n = {n}, m = {m}")));
    }
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::invalid(format!("eta must be positive, got {eta}")));
    }
    let sd = (1.0 / (2.0 * beta as f64 * eta)).sqrt();
    let eigenvalues = if beta == 1 {
        let x: Vec<f64> = (0..m * n).map(|_| sd * stream.standard_normal()).collect();
        symmetric_eigenvalues(&SymmetricMatrix::gram(m, n, &x), DEFAULT_TOL)?
    } else {
        // X = A + iB as the real block matrix [[A, −B], [B, A]]; each
        // eigenvalue of X†X appears twice.
        let re: Vec<f64> = (0..m * n).map(|_| sd * stream.standard_normal()).collect();
        let im: Vec<f64> = (0..m * n).map(|_| sd * stream.standard_normal()).collect();
        let (rows, cols) = (2 * m, 2 * n);
        let mut big = vec![0.0; rows * cols];
        for i in 0..m {
            for j in 0..n {
                let (a, b) = (re[i * n + j], im[i * n + j]);
                big[i * cols + j] = a;
                big[i * cols + n + j] = -b;
                big[(m + i) * cols + j] = b;
                big[(m + i) * cols + n + j] = a;
            }
        }
        let doubled = symmetric_eigenvalues(&SymmetricMatrix::gram(rows, cols, &big), DEFAULT_TOL)?;
        doubled.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
    };
    Ok(SpectralSample { xi: 1.0, eigenvalues: positive(eigenvalues)? })
}

/// `B·Bᵀ` for the bidiagonal β-Laguerre model with weight `e^{−λ/2}`.
pub fn sample_laguerre_tridiag(stream: &mut RandomStream, beta: f64, n: usize, m: usize) -> Result<TridiagonalMatrix> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::invalid(format!("beta must be positive, got {beta}")));
    }
    if n < 1 || n > m {
        return Err(Error::invalid(format!("need 1 <= n <= m, got n = {n}, m = {m}")));
    }
    let d: Vec<f64> = (1..=n)
        .map(|i| stream.chi_variate(beta * (m - i + 1) as f64))
        .collect::<Result<_>>()?;
    let o: Vec<f64> = (1..n).map(|i| stream.chi_variate(beta * (n - i) as f64)).collect::<Result<_>>()?;
    let diagonal = (0..n).map(|i| d[i] * d[i] + if i > 0 { o[i - 1] * o[i - 1] } else { 0.0 }).collect();
    let off_diagonal = (0..n - 1).map(|i| d[i] * o[i]).collect();
    TridiagonalMatrix::new(diagonal, off_diagonal)
}

/// Draws at inverse variance `eta` by the configured method.
fn sample_at_eta(stream: &mut RandomStream, config: &EnsembleConfig, eta: f64) -> Result<Vec<f64>> {
    if config.uses_dense() {
        Ok(sample_wl_dense(stream, config.beta, config.n, config.m, eta)?.eigenvalues)
    } else {
        let beta = config.beta as f64;
        let t = sample_laguerre_tridiag(stream, beta, config.n, config.m)?;
        let scale = 1.0 / (2.0 * eta * beta);
        let ev = eigenvalues_tridiag(&t, DEFAULT_TOL)?;
        positive(ev.into_iter().map(|x| x * scale).collect())
    }
}

/// Superstatistical draw: mixing variable first, then a WL spectrum at the
/// induced inverse variance (`γξ` for inverse-χ², `ξ/γ` for χ²).
pub fn sample_superstat(stream: &mut RandomStream, config: &EnsembleConfig) -> Result<SpectralSample> {
    config.validate()?;
    let gamma = config.gamma.ok_or_else(|| Error::invalid("sample_superstat needs a mixing family; use sample_wl_dense for wl"))?;
    let (xi, eta) = match config.family {
        Family::Wl => return Err(Error::invalid("sample_superstat needs a mixing family; use sample_wl_dense for wl")),
        Family::InvChi2 => {
            let xi = stream.xi_inverse_chi2(gamma)?;
            (xi, gamma * xi)
        }
        Family::Chi2 => {
            let xi = stream.xi_chi2(gamma, config.beta, config.n, config.m)?;
            (xi, xi / gamma)
        }
    };
    Ok(SpectralSample { xi, eigenvalues: sample_at_eta(stream, config, eta)? })
}

/// One draw from any family; WL uses `η·β = 1/2`.
pub fn sample(stream: &mut RandomStream, config: &EnsembleConfig) -> Result<SpectralSample> {
    match config.family {
        Family::Wl => {
            config.validate()?;
            let eta = 0.5 / config.beta as f64;
            Ok(SpectralSample { xi: 1.0, eigenvalues: sample_at_eta(stream, config, eta)? })
        }
        _ => sample_superstat(stream, config),
    }
}

/// `λ_j = n·μ_j / Σμ`, so the output has mean one.
pub fn rescale_to_unit_mean(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    if eigenvalues.is_empty() {
        return Err(Error::invalid("cannot rescale an empty spectrum"));
    }
    if let Some(x) = eigenvalues.iter().find(|&&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::invalid(format!("eigenvalues must be positive, got {x}")));
    }
    let sum: f64 = eigenvalues.iter().sum();
    if !(sum > 0.0) || !sum.is_finite() {
        return Err(Error::invalid("spectrum sum is not positive"));
    }
    let k = eigenvalues.len() as f64 / sum;
    Ok(eigenvalues.iter().map(|x| x * k).collect())
}

/// `μ_j − μ_{j−1}` for an ascending spectrum.
pub fn bare_spacings(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    if eigenvalues.len() < 2 {
        return Err(Error::invalid("need at least two eigenvalues for spacings"));
    }
    if eigenvalues.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::invalid("eigenvalues must be sorted ascending"));
    }
    Ok(eigenvalues.windows(2).map(|w| w[1] - w[0]).collect())
}

//! Per-sample random streams and the scalar samplers built on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{Error, Result};

/// A ChaCha keystream selected by `(master_seed, stream_id)`.
///
/// Streams with different ids share the key and differ in the ChaCha stream
/// word, so they never overlap.
#[derive(Clone, Debug)]
pub struct RandomStream {
    master_seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_id);
        Self { master_seed, stream_id, rng }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    pub fn gaussian(&mut self, mean: f64, sd: f64) -> Result<f64> {
        if !(sd > 0.0) || !sd.is_finite() || !mean.is_finite() {
            return Err(Error::domain(format!("gaussian needs finite mean and sd > 0, got sd = {sd}")));
        }
        Ok(mean + sd * self.standard_normal())
    }

    /// Gamma variate with density `∝ u^{shape−1} e^{−u/scale}`.
    pub fn gamma_variate(&mut self, shape: f64, scale: f64) -> Result<f64> {
        if !(shape > 0.0 && scale > 0.0) || !shape.is_finite() || !scale.is_finite() {
            return Err(Error::domain(format!("gamma_variate needs shape, scale > 0, got {shape}, {scale}")));
        }
        let dist = Gamma::new(shape, scale).map_err(|e| Error::domain(e.to_string()))?;
        Ok(dist.sample(&mut self.rng))
    }

    /// `χ_dof = √(2·Gamma(dof/2, 1))`.
    pub fn chi_variate(&mut self, dof: f64) -> Result<f64> {
        if !(dof > 0.0) || !dof.is_finite() {
            return Err(Error::domain(format!("chi_variate needs dof > 0, got {dof}")));
        }
        Ok((2.0 * self.gamma_variate(0.5 * dof, 1.0)?).sqrt())
    }

    /// `ξ = 1/G` with `G ~ Gamma(γ+1, 1)`, i.e. density `ξ^{−γ−2} e^{−1/ξ} / Γ(γ+1)`.
    pub fn xi_inverse_chi2(&mut self, gamma: f64) -> Result<f64> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::domain(format!("xi_inverse_chi2 needs gamma > 0, got {gamma}")));
        }
        Ok(1.0 / self.gamma_variate(gamma + 1.0, 1.0)?)
    }

    /// Mixing variable of the χ² family: `ξ ~ Gamma(γ, 1)`.
    ///
    /// The weight `ξ^{γ−1+βNM/2} e^{−ξ}` multiplies an unnormalized Gaussian
    /// whose normalization is `∝ ξ^{−βNM/2}`; the two powers cancel, leaving
    /// the marginal law of `ξ` independent of the matrix shape.
    pub fn xi_chi2(&mut self, gamma: f64, beta: u32, n: usize, m: usize) -> Result<f64> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::domain(format!("xi_chi2 needs gamma > 0, got {gamma}")));
        }
        if !matches!(beta, 1 | 2 | 4) {
            return Err(Error::domain(format!("beta must be 1, 2 or 4, got {beta}")));
        }
        if n < 2 || n > m {
            return Err(Error::domain(format!("xi_chi2 needs 2 <= n <= m, got n = {n}, m = {m}")));
        }
        self.gamma_variate(gamma, 1.0)
    }
}

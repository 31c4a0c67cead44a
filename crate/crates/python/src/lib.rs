//! Python bindings for `superwl`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use superwl::density::DensityModel;
use superwl::empirical::{fit_spectrum, FitFamily};
use superwl::ensembles::{EnsembleConfig, Family};
use superwl::harness::{draw_spectra, run_density_experiment, run_spacing_experiment};
use superwl::selfcheck::run_selfcheck;
use superwl::spacing::SpacingModel;
use superwl::{specfun, Error};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::Invalid(_) | Error::Pole(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for superwl::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

#[pyfunction]
fn ln_gamma(x: f64) -> PyResult<f64> {
    specfun::ln_gamma(x).py()
}

#[pyfunction]
fn bessel_k(nu: f64, x: f64) -> PyResult<f64> {
    specfun::bessel_k(nu, x).py()
}

#[pyfunction]
fn tricomi_u(a: f64, b: f64, z: f64) -> PyResult<f64> {
    specfun::tricomi_u(a, b, z).py()
}

#[pyfunction]
fn upper_incomplete_gamma(a: f64, x: f64) -> PyResult<f64> {
    specfun::upper_incomplete_gamma(a, x).py()
}

/// Eigenvalue density: `kind` is `"mp"` or `"gen"`.
#[pyclass(name = "Density", frozen)]
struct PyDensity(DensityModel);

#[pymethods]
impl PyDensity {
    #[new]
    #[pyo3(signature = (kind, c, gamma = None))]
    fn new(kind: &str, c: f64, gamma: Option<f64>) -> PyResult<Self> {
        let model = match (kind, gamma) {
            ("mp", None) => DensityModel::mp(c),
            ("gen", Some(g)) => DensityModel::gen(g, c),
            ("mp", Some(_)) => return Err(PyValueError::new_err("gamma is meaningless for mp")),
            ("gen", None) => return Err(PyValueError::new_err("gen needs gamma")),
            _ => return Err(PyValueError::new_err(format!("unknown density kind {kind:?}"))),
        };
        Ok(Self(model.py()?))
    }

    fn pdf(&self, x: f64) -> PyResult<f64> {
        self.0.pdf(x).py()
    }

    fn theta(&self, y: f64) -> PyResult<f64> {
        self.0.theta(y).py()
    }

    fn moment(&self, k: i32) -> PyResult<f64> {
        self.0.moment(k).py()
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label()
    }

    fn __repr__(&self) -> String {
        format!("Density({})", self.0.label())
    }
}

/// Unit-mean spacing law: `law` is `"wd"`, `"wl2"` or `"gen"`.
#[pyclass(name = "Spacing", frozen)]
struct PySpacing(SpacingModel);

#[pymethods]
impl PySpacing {
    #[new]
    #[pyo3(signature = (law, beta, gamma = None, m = None, n_scale = 0.5))]
    fn new(law: &str, beta: u32, gamma: Option<f64>, m: Option<usize>, n_scale: f64) -> PyResult<Self> {
        let model = match law {
            "wd" => SpacingModel::wd(beta),
            "wl2" => SpacingModel::wl2(beta, m.ok_or_else(|| PyValueError::new_err("wl2 needs m"))?, n_scale),
            "gen" => SpacingModel::gen(beta, gamma.ok_or_else(|| PyValueError::new_err("gen needs gamma"))?),
            _ => return Err(PyValueError::new_err(format!("unknown spacing law {law:?}"))),
        };
        Ok(Self(model.py()?))
    }

    fn pdf(&self, s: f64) -> PyResult<f64> {
        self.0.pdf(s).py()
    }

    fn moment(&self, k: i32) -> PyResult<f64> {
        self.0.moment(k).py()
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label()
    }

    fn __repr__(&self) -> String {
        format!("Spacing({})", self.0.label())
    }
}

fn config(beta: u32, n: usize, m: usize, family: &str, gamma: Option<f64>) -> PyResult<EnsembleConfig> {
    let family: Family = family.parse().py()?;
    EnsembleConfig::new(beta, n, m, gamma, family).py()
}

/// Raw ascending spectra of `samples` draws.
#[pyfunction]
#[pyo3(signature = (beta, n, m, family, samples, seed, gamma = None))]
fn sample_spectra(py: Python<'_>, beta: u32, n: usize, m: usize, family: &str, samples: usize, seed: u64, gamma: Option<f64>) -> PyResult<Vec<Vec<f64>>> {
    let cfg = config(beta, n, m, family, gamma)?;
    let draws = py.detach(|| draw_spectra(&cfg, samples, seed)).py()?;
    Ok(draws.into_iter().map(|s| s.eigenvalues).collect())
}

/// Density experiment report as a JSON string.
#[pyfunction]
#[pyo3(signature = (beta, n, m, family, samples, seed, gamma = None, bins = 60))]
#[allow(clippy::too_many_arguments)]
fn density_experiment(py: Python<'_>, beta: u32, n: usize, m: usize, family: &str, samples: usize, seed: u64, gamma: Option<f64>, bins: usize) -> PyResult<String> {
    let cfg = config(beta, n, m, family, gamma)?;
    py.detach(|| run_density_experiment(&cfg, samples, bins, seed)?.to_json()).py()
}

/// Spacing experiment report at location `k` as a JSON string.
#[pyfunction]
#[pyo3(signature = (beta, n, m, family, k, samples, seed, gamma = None, bins = 60))]
#[allow(clippy::too_many_arguments)]
fn spacing_experiment(py: Python<'_>, beta: u32, n: usize, m: usize, family: &str, k: usize, samples: usize, seed: u64, gamma: Option<f64>, bins: usize) -> PyResult<String> {
    let cfg = config(beta, n, m, family, gamma)?;
    py.detach(|| run_spacing_experiment(&cfg, k, samples, bins, seed, None)?.to_json()).py()
}

/// Least-squares fit of a spectrum; returns `(gamma_hat, objective)`.
#[pyfunction]
#[pyo3(signature = (eigenvalues, c, family, trim = 0, seed = 0))]
fn fit_gamma(py: Python<'_>, eigenvalues: Vec<f64>, c: f64, family: &str, trim: usize, seed: u64) -> PyResult<(Option<f64>, f64)> {
    let family: FitFamily = family.parse().py()?;
    let fit = py.detach(|| fit_spectrum(&eigenvalues, c, family, trim, seed)).py()?;
    Ok((fit.gamma_hat, fit.objective))
}

/// `(name, passed, detail)` for every invariant check.
#[pyfunction]
#[pyo3(signature = (seed = 1))]
fn selfcheck(py: Python<'_>, seed: u64) -> Vec<(String, bool, String)> {
    py.detach(|| run_selfcheck(seed, None))
        .into_iter()
        .map(|o| (o.name.to_owned(), o.passed, o.detail))
        .collect()
}

#[pymodule]
fn superwl_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(ln_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_k, m)?)?;
    m.add_function(wrap_pyfunction!(tricomi_u, m)?)?;
    m.add_function(wrap_pyfunction!(upper_incomplete_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(sample_spectra, m)?)?;
    m.add_function(wrap_pyfunction!(density_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(spacing_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(fit_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(selfcheck, m)?)?;
    m.add_class::<PyDensity>()?;
    m.add_class::<PySpacing>()?;
    Ok(())
}

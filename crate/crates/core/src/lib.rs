//! Superstatistical Wishart-Laguerre random matrix ensembles.

pub mod cli;
pub mod density;
pub mod eigen;
pub mod empirical;
pub mod ensembles;
pub mod error;
pub mod harness;
pub mod rng;
pub mod selfcheck;
pub mod spacing;
pub mod specfun;

pub use error::{Error, Result};

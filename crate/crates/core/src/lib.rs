//! Numerical harmonic analysis on uniform lattices.
//!
//! The crate is organised bottom-up:
//!
//! - [`sampled`]: grids on symmetric boxes, sampled functions, lattice quadrature and
//!   convolution.
//! - [`kernels`]: closed forms for the Abel, Gauss, Poisson and half-line kernels,
//!   plus the Gaussian-average representation of the Abel kernel.
//! - [`spectral`]: continuous-convention Fourier transforms of sampled functions,
//!   Abel-regularized inversion and spectral support projection.
//! - [`summability`]: Abel and Gauss means and limit extraction along a schedule.
//! - [`halfplane`]: Hardy splitting, half-plane holomorphic extensions, Cauchy and
//!   Poisson representations, and a Cauchy–Riemann residual checker.
//! - [`growth`]: band-limited entire extensions, envelope bounds, exponential type
//!   estimation and the real-axis-bound growth check.
//! - [`cli`]: the experiment runner behind the `harmonic` binary.

pub mod cli;
pub mod error;
pub mod growth;
pub mod halfplane;
pub mod kernels;
pub mod quad;
pub mod sampled;
pub mod spectral;
pub mod summability;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use sampled::{make_grid, Breakpoint, DecayTag, Grid, Jet, SampledFunction};
pub use spectral::{Spectrum, SupportSpec};

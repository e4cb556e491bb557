//! Numerical toolkit for a FitzHugh–Nagumo reaction-diffusion system whose
//! excitability `c(x)` varies in space.
//!
//! The crate covers the stationary state, the Sturm–Liouville spectrum of
//! the linearisation (Prüfer shooting), location of the Hopf point in the
//! heterogeneity amplitude `p`, the center-manifold coefficients and first
//! Lyapunov coefficient at that point, and direct method-of-lines
//! simulation for cross-checking the spectral predictions.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bifurcation;
pub mod center_manifold;
pub mod cli;
pub mod config;
pub mod error;
pub mod linalg;
pub mod model;
pub mod pde_sim;
pub mod quadrature;
pub mod spectral;

#[cfg(test)]
mod oracle;

pub use error::{Error, Result};
pub use model::{HeterogeneityProfile, ModelParams, StationaryState};

//! Periodic traveling gravity water waves with constant vorticity, computed
//! in conformal variables.
//!
//! The fluid domain is sought as the conformal image of a strip of depth
//! `kh`, which turns the free-boundary problem into a quasilinear equation
//! for the surface elevation `v = h + w` of one periodic variable. The crate
//! provides
//!
//! * [`spectral`]: collocation/Fourier representation of periodic functions,
//! * [`operators`]: strip Hilbert transform, Dirichlet–Neumann operator and friends,
//! * [`wave`]: the surface residual, its linearization and the closed-form
//!   dispersion, laminar-flow and stagnation data,
//! * [`continuation`]: Newton solves, bifurcation detection and branch tracing,
//! * [`field`]: reconstruction of the conformal map, stream function,
//!   velocity, surface geometry and stagnation points,
//! * [`io`], [`config`], [`pipeline`]: file formats and the command pipelines.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod continuation;
pub mod error;
pub mod field;
pub mod io;
pub mod operators;
pub mod pipeline;
pub mod spectral;
pub mod wave;

pub use error::{Error, Result};
pub use spectral::PeriodicFunction;
pub use wave::{PhysicalParams, Side, WaveState};

//! The surface equation in `(λ, μ, w)` form and its exact linearization.
//!
//! With `P = C_{kh}(w')`, `A = C_{kh}(ww') - wP - w/k + [w²]/(2kh)`,
//! `L = λ/k + γA`, `T₁ = λ² + μ - 2gw` and `T₂ = w'² + (1/k + P)²` the
//! residual is `F = L² - T₁T₂`. All products are dealiased, so `F` is a
//! polynomial map on the truncated coefficient space and the directional
//! derivative below is its exact derivative.

use nalgebra::DMatrix;

use super::params::{PhysicalParams, WaveState};
use crate::error::{Error, Result};
use crate::operators::{hilbert_strip, product_with_derivative, StripDepth, MEAN_TOL};
use crate::spectral::PeriodicFunction;

/// Residual `LHS - RHS` of the surface equation at `state`.
pub fn residual(state: &WaveState) -> PeriodicFunction {
    Linearization::new(state).residual
}

/// Evaluates the residual for raw `(λ, μ, w)`; `w` must have zero mean.
pub fn residual_of(params: &PhysicalParams, lambda: f64, mu: f64, w: &PeriodicFunction) -> PeriodicFunction {
    Linearization::from_parts(params, lambda, mu, w).residual
}

/// Linearization about the trivial state `(λ, (0, 0))` applied to `(f, ν)`:
/// `(2/k²)((g - λγ) f - λ² k C_{kh}(f')) - ν/k²`.
pub fn linearization_trivial(
    lambda: f64,
    p: &PhysicalParams,
    nu: f64,
    f: &PeriodicFunction,
) -> Result<PeriodicFunction> {
    if f.mean().abs() > MEAN_TOL * f.max_abs().max(1.0) {
        return Err(Error::NonZeroMean { mean: f.mean() });
    }
    let k = p.k;
    let c_df = hilbert_strip(&f.differentiate(), p.strip_depth())?;
    let lin = f.scale(p.g - lambda * p.gamma).axpy(-lambda * lambda * k, &c_df);
    Ok(lin.scale(2.0 / (k * k)).add_constant(-nu / (k * k)))
}

/// An unknown of the discretized problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unknown {
    Lambda,
    Mu,
    /// Cosine coefficient `a_n` of `w`.
    Cos(usize),
}

/// Frozen intermediate fields of the residual at one state, reused for
/// every directional derivative.
#[derive(Debug, Clone)]
pub struct Linearization {
    params: PhysicalParams,
    depth: StripDepth,
    lambda: f64,
    w: PeriodicFunction,
    dw: PeriodicFunction,
    hdw: PeriodicFunction,
    l: PeriodicFunction,
    t1: PeriodicFunction,
    t2: PeriodicFunction,
    grad: PeriodicFunction,
    residual: PeriodicFunction,
}

impl Linearization {
    pub fn new(state: &WaveState) -> Self {
        Self::from_parts(&state.params, state.lambda, state.mu, state.w())
    }

    pub fn from_parts(params: &PhysicalParams, lambda: f64, mu: f64, w: &PeriodicFunction) -> Self {
        let (k, h, g, gamma) = (params.k, params.h, params.g, params.gamma);
        let depth = params.strip_depth();
        let dw = w.differentiate();
        let hdw = hilbert_strip(&dw, depth).expect("derivative has zero mean");
        let wdw = product_with_derivative(w, &dw);
        let h_wdw = hilbert_strip(&wdw, depth).expect("mean removed");
        let w2_mean = w.square().mean();
        let a = h_wdw
            .sub(&w.multiply(&hdw))
            .axpy(-1.0 / k, w)
            .add_constant(w2_mean / (2.0 * k * h));
        let l = a.scale(gamma).add_constant(lambda / k);
        let t1 = w.scale(-2.0 * g).add_constant(lambda * lambda + mu);
        let grad = hdw.add_constant(1.0 / k);
        let t2 = dw.square().add(&grad.square());
        let residual = l.square().sub(&t1.multiply(&t2));
        Self { params: *params, depth, lambda, w: w.clone(), dw, hdw, l, t1, t2, grad, residual }
    }

    pub fn residual(&self) -> &PeriodicFunction {
        &self.residual
    }

    /// Directional derivative along `(dλ, dμ, f)`.
    pub fn apply(&self, dlambda: f64, dmu: f64, f: &PeriodicFunction) -> PeriodicFunction {
        let (k, h, g, gamma) = (self.params.k, self.params.h, self.params.g, self.params.gamma);
        let df = f.differentiate();
        let hdf = hilbert_strip(&df, self.depth).expect("derivative has zero mean");
        let d_wdw = f.multiply(&self.dw).add(&self.w.multiply(&df)).without_mean();
        let h_dwdw = hilbert_strip(&d_wdw, self.depth).expect("mean removed");
        let d_w2_mean = 2.0 * self.w.multiply(f).mean();
        let da = h_dwdw
            .sub(&f.multiply(&self.hdw))
            .sub(&self.w.multiply(&hdf))
            .axpy(-1.0 / k, f)
            .add_constant(d_w2_mean / (2.0 * k * h));
        let dl = da.scale(gamma).add_constant(dlambda / k);
        let dlhs = self.l.multiply(&dl).scale(2.0);
        let dt1 = f.scale(-2.0 * g).add_constant(2.0 * self.lambda * dlambda + dmu);
        let dt2 = self.dw.multiply(&df).add(&self.grad.multiply(&hdf)).scale(2.0);
        let drhs = dt1.multiply(&self.t2).add(&self.t1.multiply(&dt2));
        dlhs.sub(&drhs)
    }

    /// Derivative along a single unknown.
    pub fn column(&self, unknown: Unknown) -> PeriodicFunction {
        let n = self.w.n_modes();
        match unknown {
            Unknown::Lambda => self.apply(1.0, 0.0, &PeriodicFunction::zero(n)),
            Unknown::Mu => self.apply(0.0, 1.0, &PeriodicFunction::zero(n)),
            Unknown::Cos(mode) => self.apply(0.0, 0.0, &PeriodicFunction::cosine(n, mode, 1.0)),
        }
    }

    /// Dense matrix whose rows are the even-residual modes `[F], a_1(F), …, a_{N-1}(F)`
    /// and whose columns are `unknowns`.
    pub fn assemble(&self, unknowns: &[Unknown]) -> DMatrix<f64> {
        let n = self.w.n_modes();
        let mut m = DMatrix::zeros(n, unknowns.len());
        for (j, &u) in unknowns.iter().enumerate() {
            let col = self.column(u);
            for (i, v) in even_modes(&col).into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }
}

/// `[F], a_1(F), …, a_{N-1}(F)`: the residual components paired with the
/// unknowns `μ, a_1, …, a_{N-1}`.
pub fn even_modes(f: &PeriodicFunction) -> Vec<f64> {
    let n = f.n_modes();
    let mut out = Vec::with_capacity(n);
    out.push(f.mean());
    out.extend_from_slice(&f.cos_coeffs()[..n - 1]);
    out
}

/// Applies the exact directional derivative of the residual at `state`.
pub fn jacobian(state: &WaveState) -> Linearization {
    Linearization::new(state)
}

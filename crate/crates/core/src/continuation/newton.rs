use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::PeriodicFunction;
use crate::wave::{even_modes, Linearization, PhysicalParams, Unknown, WaveState};

/// Newton and continuation settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    /// Residual max-norm at which a Newton iteration stops.
    pub newton_tol: f64,
    pub max_newton_iters: usize,
    /// Initial arclength step; also the first amplitude off the trivial branch.
    pub ds: f64,
    pub ds_min: f64,
    pub ds_max: f64,
    /// Highest resolved wavenumber `N`.
    pub n_modes: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { newton_tol: 1e-11, max_newton_iters: 25, ds: 1e-3, ds_min: 1e-5, ds_max: 5e-2, n_modes: 128 }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [self.newton_tol, self.ds, self.ds_min, self.ds_max];
        if positive.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::Config(format!("solver tolerances and steps must be positive: {self:?}")));
        }
        if self.newton_tol >= 1e-6 {
            return Err(Error::Config(format!("newton_tol must be below 1e-6, got {}", self.newton_tol)));
        }
        if self.max_newton_iters == 0 {
            return Err(Error::Config("max_newton_iters must be positive".into()));
        }
        if self.n_modes < 4 {
            return Err(Error::Config(format!("n_modes must be at least 4, got {}", self.n_modes)));
        }
        if !(self.ds_min <= self.ds && self.ds <= self.ds_max) {
            return Err(Error::Config(format!(
                "need ds_min <= ds <= ds_max, got {} <= {} <= {}",
                self.ds_min, self.ds, self.ds_max
            )));
        }
        Ok(())
    }
}

/// Which scalar is held fixed during a Newton solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Hold {
    /// `λ` is a parameter; unknowns are `μ` and the cosine modes of `w`.
    Lambda,
    /// The `cos(mode·x)` coefficient of `w` is held at `value`; `λ` becomes unknown.
    Amplitude { mode: usize, value: f64 },
}

#[derive(Debug, Clone)]
pub struct NewtonOutcome {
    pub state: WaveState,
    /// Number of Newton updates applied.
    pub iterations: usize,
    /// Residual max-norm before each update and at the end.
    pub residual_history: Vec<f64>,
    /// 2-norm condition number of the Jacobian at the returned state.
    pub condition: f64,
}

impl NewtonOutcome {
    pub fn residual_norm(&self) -> f64 {
        *self.residual_history.last().expect("history is never empty")
    }
}

/// Unknowns of the even, zero-mean discretization: `μ, a_1, …, a_{N-1}`
/// plus `λ`, minus the held one.
pub(crate) fn unknowns_for(hold: Hold, n_modes: usize) -> Vec<Unknown> {
    let mut u = vec![Unknown::Mu];
    if let Hold::Amplitude { .. } = hold {
        u.push(Unknown::Lambda);
    }
    for j in 1..n_modes {
        if matches!(hold, Hold::Amplitude { mode, .. } if mode == j) {
            continue;
        }
        u.push(Unknown::Cos(j));
    }
    u
}

/// Applies an update along `unknowns` to `(λ, μ, a)`.
pub(crate) fn apply_update(
    params: &PhysicalParams,
    lambda: &mut f64,
    mu: &mut f64,
    a: &mut [f64],
    unknowns: &[Unknown],
    delta: &DVector<f64>,
) {
    for (u, d) in unknowns.iter().zip(delta.iter()) {
        match u {
            Unknown::Lambda => *lambda += d,
            Unknown::Mu => *mu += d,
            Unknown::Cos(j) => a[j - 1] += d,
        }
    }
    let _ = params;
}

pub(crate) fn build_state(params: &PhysicalParams, lambda: f64, mu: f64, a: &[f64]) -> Result<WaveState> {
    let n = a.len();
    let mut coeffs = a.to_vec();
    coeffs[n - 1] = 0.0;
    let w = PeriodicFunction::from_cosines(n, 0.0, coeffs)?;
    WaveState::new(*params, lambda, mu, w)
}

pub(crate) fn smallest_singular_value(m: &DMatrix<f64>) -> f64 {
    m.clone().singular_values().iter().cloned().fold(f64::INFINITY, f64::min)
}

pub(crate) fn condition_number(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Solves `J x = rhs` by LU, reporting the smallest singular value on failure.
pub(crate) fn solve_dense(j: DMatrix<f64>, rhs: DVector<f64>) -> Result<DVector<f64>> {
    let fallback = j.clone();
    match j.lu().solve(&rhs) {
        Some(x) if x.iter().all(|v| v.is_finite()) => Ok(x),
        _ => Err(Error::Singular { sigma_min: smallest_singular_value(&fallback) }),
    }
}

/// Newton's method on the even cosine subspace.
///
/// Evenness and `[w] = 0` hold exactly by construction; the Nyquist cosine
/// mode is kept at zero.
pub fn newton_solve(initial: &WaveState, hold: Hold, config: &SolverConfig) -> Result<NewtonOutcome> {
    let params = initial.params;
    let n = initial.n_modes();
    let unknowns = unknowns_for(hold, n);
    let mut lambda = initial.lambda;
    let mut mu = initial.mu;
    let mut a = initial.w().cos_coeffs().to_vec();
    a[n - 1] = 0.0;
    if let Hold::Amplitude { mode, value } = hold {
        if mode == 0 || mode >= n {
            return Err(Error::Domain(format!("amplitude mode {mode} outside 1..{n}")));
        }
        a[mode - 1] = value;
    }

    let mut history = Vec::new();
    let mut iterations = 0;
    loop {
        let state = build_state(&params, lambda, mu, &a)?;
        let lin = Linearization::new(&state);
        let norm = lin.residual().max_abs();
        history.push(norm);
        if !norm.is_finite() {
            return Err(Error::Divergence { iterations, history });
        }
        if norm <= config.newton_tol {
            let jac = lin.assemble(&unknowns);
            let condition = condition_number(&jac);
            log::debug!("newton converged in {iterations} iterations, residual {norm:e}");
            return Ok(NewtonOutcome { state, iterations, residual_history: history, condition });
        }
        if iterations >= config.max_newton_iters {
            return Err(Error::Divergence { iterations, history });
        }
        let jac = lin.assemble(&unknowns);
        let rhs = -DVector::from_vec(even_modes(lin.residual()));
        let delta = solve_dense(jac, rhs)?;
        apply_update(&params, &mut lambda, &mut mu, &mut a, &unknowns, &delta);
        iterations += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wave::dispersion_lambdas;

    fn cfg(n_modes: usize) -> SolverConfig {
        SolverConfig { n_modes, ..SolverConfig::default() }
    }

    #[test]
    fn trivial_state_is_accepted_immediately() {
        let p = PhysicalParams::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let out = newton_solve(&WaveState::trivial(p, 0.1, 32), Hold::Lambda, &cfg(32)).unwrap();
        assert!(out.iterations <= 1);
        assert!(out.state.is_flat());
        assert!(out.condition.is_finite());
    }

    #[test]
    fn perturbed_trivial_state_returns_to_trivial() {
        let p = PhysicalParams::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let n = 32;
        let w = PeriodicFunction::cosine(n, 1, 1e-4).axpy(2e-5, &PeriodicFunction::cosine(n, 3, 1.0));
        let start = WaveState::new(p, 0.1, 1e-5, w).unwrap();
        let out = newton_solve(&start, Hold::Lambda, &cfg(n)).unwrap();
        assert!(out.state.w().max_abs() < 1e-10);
        assert!(out.state.mu.abs() < 1e-10);
    }

    #[test]
    fn quadratic_convergence_near_bifurcation() {
        let p = PhysicalParams::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let n = 64;
        let (_, minus) = dispersion_lambdas(1, &p);
        let start = WaveState::new(p, minus + 0.01, 0.0, PeriodicFunction::cosine(n, 1, 1e-3)).unwrap();
        let out = newton_solve(&start, Hold::Amplitude { mode: 1, value: 1e-3 }, &cfg(n)).unwrap();
        assert!(out.iterations <= 6, "{:?}", out.residual_history);
        let h = &out.residual_history;
        // Once in the asymptotic regime, r_{k+1} <= C r_k².
        for w in h.windows(2).skip(1) {
            if w[0] < 1e-4 && w[1] > 1e-13 {
                assert!(w[1] <= 1e3 * w[0] * w[0], "{h:?}");
            }
        }
        assert!((out.state.lambda - minus).abs() < 1e-5);
    }

    #[test]
    fn singular_at_bifurcation_point() {
        let p = PhysicalParams::new(0.0, 1.0, 1.0, 1.0).unwrap();
        let (plus, _) = dispersion_lambdas(1, &p);
        let n = 16;
        let start = WaveState::new(p, plus, 0.0, PeriodicFunction::cosine(n, 2, 1e-3)).unwrap();
        match newton_solve(&start, Hold::Lambda, &cfg(n)) {
            Err(Error::Singular { sigma_min }) => assert!(sigma_min < 1e-10),
            Ok(out) => assert!(out.condition > 1e10),
            Err(e) => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn divergence_reports_history() {
        let p = PhysicalParams::new(0.0, 1.0, 1.0, 1.0).unwrap();
        let n = 16;
        let start = WaveState::new(p, 0.3, 0.0, PeriodicFunction::cosine(n, 1, 0.9)).unwrap();
        let config = SolverConfig { max_newton_iters: 1, ..cfg(n) };
        match newton_solve(&start, Hold::Lambda, &config) {
            Err(Error::Divergence { iterations, history }) => {
                assert_eq!(iterations, 1);
                assert_eq!(history.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}

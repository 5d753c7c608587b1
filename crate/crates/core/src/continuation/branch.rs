use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::newton::{build_state, newton_solve, solve_dense, unknowns_for, Hold, NewtonOutcome, SolverConfig};
use crate::error::{Error, Result};
use crate::field::{validity_flags, Validity};
use crate::spectral::PeriodicFunction;
use crate::wave::{dispersion_lambdas, even_modes, Linearization, PhysicalParams, Side, Unknown, WaveState};

/// Where a branch leaves the trivial family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchStart {
    pub mode: usize,
    pub lambda_star: f64,
    pub side: Side,
}

impl BranchStart {
    pub fn from_dispersion(p: &PhysicalParams, mode: usize, side: Side) -> Self {
        Self { mode, lambda_star: side.pick(dispersion_lambdas(mode, p)), side }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchPoint {
    pub state: WaveState,
    /// Cumulative pseudo-arclength.
    pub arclength: f64,
    /// Amplitude `s`: the `cos(n x)` coefficient of `w`.
    pub amplitude: f64,
    pub residual_norm: f64,
    pub iterations: usize,
    pub validity: Validity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub params: PhysicalParams,
    pub mode_n: usize,
    pub points: Vec<BranchPoint>,
    pub provenance: BranchStart,
    /// Indices of points just past a fold in `λ`.
    pub folds: Vec<usize>,
    /// Why tracing stopped early, if it did.
    pub truncated: Option<String>,
}

impl Branch {
    /// Least-squares fit `‖w(s) - s cos(nx)‖_∞ ≈ C s^p` over points with
    /// `0 < |s| ≤ s_max`; returns `(C, p)`.
    pub fn remainder_fit(&self, s_max: f64) -> Option<(f64, f64)> {
        let samples: Vec<(f64, f64)> = self
            .points
            .iter()
            .filter(|pt| pt.amplitude != 0.0 && pt.amplitude.abs() <= s_max)
            .map(|pt| (pt.amplitude.abs(), linear_remainder(pt.state.w(), self.mode_n)))
            .collect();
        fit_power_law(&samples)
    }
}

/// `‖w - a_n cos(n x)‖_∞`.
pub fn linear_remainder(w: &PeriodicFunction, mode: usize) -> f64 {
    w.sub(&PeriodicFunction::cosine(w.n_modes(), mode, w.cos_coeff(mode))).max_abs()
}

/// Fits `y ≈ C x^p` by least squares in log-log coordinates.
pub fn fit_power_law(samples: &[(f64, f64)]) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let order = sxy / sxx;
    Some(((my - order * mx).exp(), order))
}

/// `s w'(x) < 0` at every interior collocation point of `(0, π)`.
pub fn is_monotone_profile(w: &PeriodicFunction, s: f64) -> bool {
    let n = w.n_modes();
    let dw = w.differentiate();
    (1..n).all(|j| s * dw.values()[j] < 0.0)
}

/// Solves the amplitude-fixed problem at each `s`, starting every solve
/// from the linear predictor `(λ*, 0, s cos(nx))`.
pub fn solve_at_amplitudes(
    p: &PhysicalParams,
    start: BranchStart,
    amplitudes: &[f64],
    config: &SolverConfig,
) -> Result<Vec<NewtonOutcome>> {
    amplitudes
        .iter()
        .map(|&s| {
            let guess = WaveState::new(
                *p,
                start.lambda_star,
                0.0,
                PeriodicFunction::cosine(config.n_modes, start.mode, s),
            )?;
            newton_solve(&guess, Hold::Amplitude { mode: start.mode, value: s }, config)
        })
        .collect()
}

fn to_vector(state: &WaveState) -> DVector<f64> {
    let n = state.n_modes();
    let mut x = DVector::zeros(n + 1);
    x[0] = state.lambda;
    x[1] = state.mu;
    for j in 1..n {
        x[j + 1] = state.w().cos_coeff(j);
    }
    x
}

fn from_vector(p: &PhysicalParams, x: &DVector<f64>) -> Result<WaveState> {
    let n = x.len() - 1;
    let mut a = vec![0.0; n];
    a[..n - 1].copy_from_slice(&x.as_slice()[2..]);
    build_state(p, x[0], x[1], &a)
}

struct Corrected {
    x: DVector<f64>,
    state: WaveState,
    residual_norm: f64,
    iterations: usize,
}

/// Newton on the residual augmented with `t·(X - X_pred) = 0`.
fn correct(
    p: &PhysicalParams,
    predicted: &DVector<f64>,
    tangent: &DVector<f64>,
    config: &SolverConfig,
) -> Result<Corrected> {
    let n = predicted.len() - 1;
    let mut unknowns = vec![Unknown::Lambda];
    unknowns.extend(unknowns_for(Hold::Lambda, n));
    let mut x = predicted.clone();
    let mut history = Vec::new();
    for iterations in 0..=config.max_newton_iters {
        let state = from_vector(p, &x)?;
        let lin = Linearization::new(&state);
        let norm = lin.residual().max_abs();
        history.push(norm);
        if !norm.is_finite() {
            break;
        }
        if norm <= config.newton_tol {
            return Ok(Corrected { x, state, residual_norm: norm, iterations });
        }
        if iterations == config.max_newton_iters {
            break;
        }
        let jac = lin.assemble(&unknowns);
        let mut full = DMatrix::zeros(n + 1, n + 1);
        full.view_mut((0, 0), (n, n + 1)).copy_from(&jac);
        full.row_mut(n).copy_from(&tangent.transpose());
        let mut rhs = DVector::zeros(n + 1);
        for (i, v) in even_modes(lin.residual()).into_iter().enumerate() {
            rhs[i] = -v;
        }
        rhs[n] = -tangent.dot(&(&x - predicted));
        x += solve_dense(full, rhs)?;
    }
    Err(Error::Divergence { iterations: history.len().saturating_sub(1), history })
}

/// Traces the branch bifurcating at `start` for `n_points` points.
pub fn trace_branch(p: &PhysicalParams, start: BranchStart, n_points: usize, config: &SolverConfig) -> Result<Branch> {
    trace_branch_until(p, start, n_points, None, config)
}

/// As [`trace_branch`], also stopping once `|s|` reaches `max_amplitude`.
///
/// Point 0 is the trivial state at `λ*`. The first step holds `a_n = ds`;
/// later steps use a secant predictor and pseudo-arclength corrector with
/// the step doubled after quick convergence and halved after failure.
pub fn trace_branch_until(
    p: &PhysicalParams,
    start: BranchStart,
    n_points: usize,
    max_amplitude: Option<f64>,
    config: &SolverConfig,
) -> Result<Branch> {
    config.validate()?;
    p.validate()?;
    let n = config.n_modes;
    if start.mode == 0 || start.mode >= n {
        return Err(Error::Domain(format!("branch mode {} outside 1..{n}", start.mode)));
    }
    let mode = start.mode;
    let trivial = WaveState::trivial(*p, start.lambda_star, n);
    let mut branch = Branch {
        params: *p,
        mode_n: mode,
        points: vec![BranchPoint {
            validity: validity_flags(&trivial),
            residual_norm: Linearization::new(&trivial).residual().max_abs(),
            state: trivial,
            arclength: 0.0,
            amplitude: 0.0,
            iterations: 0,
        }],
        provenance: start,
        folds: Vec::new(),
        truncated: None,
    };
    if n_points <= 1 {
        return Ok(branch);
    }

    // First step off the trivial branch at fixed amplitude.
    let mut ds = config.ds;
    let first = loop {
        match solve_at_amplitudes(p, start, &[ds], config) {
            Ok(mut v) => break v.remove(0),
            Err(e) => {
                ds *= 0.5;
                if ds < config.ds_min {
                    branch.truncated = Some(format!("first step failed: {e}"));
                    return Ok(branch);
                }
            }
        }
    };
    let mut prev_x = to_vector(&branch.points[0].state);
    let mut x = to_vector(&first.state);
    let mut arclength = (&x - &prev_x).norm();
    let first_norm = first.residual_norm();
    push_point(&mut branch, first.state, arclength, first_norm, first.iterations);
    if first.iterations <= 3 {
        ds = (ds * 2.0).min(config.ds_max);
    }

    while branch.points.len() < n_points {
        if let Some(limit) = max_amplitude {
            if branch.points.last().unwrap().amplitude.abs() >= limit {
                break;
            }
        }
        let secant = &x - &prev_x;
        let tangent = secant.normalize();
        let predicted = &x + &tangent * ds;
        match correct(p, &predicted, &tangent, config) {
            Ok(c) => {
                let new_secant = &c.x - &x;
                if new_secant[0] * secant[0] < 0.0 {
                    log::info!("fold in lambda near lambda = {}", c.state.lambda);
                    branch.folds.push(branch.points.len());
                }
                arclength += new_secant.norm();
                prev_x = std::mem::replace(&mut x, c.x);
                push_point(&mut branch, c.state, arclength, c.residual_norm, c.iterations);
                if c.iterations <= 3 {
                    ds = (ds * 2.0).min(config.ds_max);
                }
            }
            Err(e) => {
                ds *= 0.5;
                log::debug!("corrector failed ({e}); step reduced to {ds:e}");
                if ds < config.ds_min {
                    branch.truncated = Some(format!("corrector failed at minimum step: {e}"));
                    break;
                }
            }
        }
    }
    Ok(branch)
}

fn push_point(branch: &mut Branch, state: WaveState, arclength: f64, residual_norm: f64, iterations: usize) {
    let validity = validity_flags(&state);
    if !validity.all() {
        log::warn!("branch point {} fails validity checks: {validity:?}", branch.points.len());
    }
    branch.points.push(BranchPoint {
        amplitude: state.amplitude(branch.mode_n),
        state,
        arclength,
        residual_norm,
        iterations,
        validity,
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(n_modes: usize) -> SolverConfig {
        SolverConfig { n_modes, ..SolverConfig::default() }
    }

    #[test]
    fn power_law_fit_recovers_exponent() {
        let samples: Vec<(f64, f64)> = [1e-3, 2e-3, 4e-3].iter().map(|&s| (s, 3.0 * s * s)).collect();
        let (c, order) = fit_power_law(&samples).unwrap();
        assert!((order - 2.0).abs() < 1e-12);
        assert!((c - 3.0).abs() < 1e-9);
    }

    #[test]
    fn branch_leaves_bifurcation_point() {
        let p = PhysicalParams::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let start = BranchStart::from_dispersion(&p, 1, Side::Minus);
        let branch = trace_branch(&p, start, 8, &config(32)).unwrap();
        assert_eq!(branch.points.len(), 8);
        assert!(branch.truncated.is_none());
        let first = &branch.points[0];
        assert!((first.state.lambda - start.lambda_star).abs() < 1e-8);
        assert!(first.state.is_flat());
        for w in branch.points.windows(2) {
            assert!(w[1].arclength > w[0].arclength);
            assert!(w[1].amplitude > w[0].amplitude);
        }
        for pt in &branch.points {
            assert!(pt.residual_norm <= 1e-11);
            assert!(pt.validity.all());
            assert!(pt.state.w().sin_coeffs().iter().all(|&b| b == 0.0));
        }
        for pt in &branch.points[1..] {
            assert!(is_monotone_profile(pt.state.w(), pt.amplitude));
        }
    }

    #[test]
    fn remainder_is_quadratic() {
        let p = PhysicalParams::new(0.0, 1.0, 1.0, 1.0).unwrap();
        let start = BranchStart::from_dispersion(&p, 1, Side::Plus);
        let sols = solve_at_amplitudes(&p, start, &[1e-3, 2e-3, 4e-3], &config(32)).unwrap();
        let samples: Vec<(f64, f64)> =
            sols.iter().map(|o| (o.state.amplitude(1), linear_remainder(o.state.w(), 1))).collect();
        let (_, order) = fit_power_law(&samples).unwrap();
        assert!((order - 2.0).abs() < 0.05, "order {order}");
    }
}

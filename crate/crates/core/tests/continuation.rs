//! Branch invariants that span the solver and the file formats.

use vorwave::continuation::{newton_solve, trace_branch_until, Branch, BranchStart, Hold, SolverConfig};
use vorwave::io;
use vorwave::wave::residual;
use vorwave::{PeriodicFunction, PhysicalParams, Side, WaveState};

fn trace(ds: f64, ds_max: f64) -> (Branch, SolverConfig) {
    let p = PhysicalParams::new(2.0, 1.0, 1.0, 1.0).unwrap();
    let config = SolverConfig { n_modes: 32, ds, ds_max, ..SolverConfig::default() };
    let start = BranchStart::from_dispersion(&p, 1, Side::Minus);
    (trace_branch_until(&p, start, 200, Some(0.02), &config).unwrap(), config)
}

#[test]
fn reloaded_points_still_solve_the_equation() {
    let (branch, config) = trace(1e-3, 5e-2);
    assert!(branch.truncated.is_none());
    assert!(branch.points.last().unwrap().amplitude >= 0.02);
    assert!(branch.points.iter().all(|pt| pt.validity.all()));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("branch.jsonl");
    io::write_branch(&path, &branch).unwrap();
    let records = io::read_branch(&path).unwrap();
    assert_eq!(records.len(), branch.points.len());
    for (rec, pt) in records.iter().zip(&branch.points) {
        let state = rec.to_state().unwrap();
        assert_eq!(state, pt.state);
        assert!(residual(&state).max_abs() <= config.newton_tol);
    }
}

/// State on `branch` at amplitude `s`: linear interpolation between the
/// neighbouring points, polished by an amplitude-held Newton solve.
fn state_at(branch: &Branch, s: f64, config: &SolverConfig) -> WaveState {
    let pts = &branch.points;
    let i = pts.iter().position(|pt| pt.amplitude >= s).expect("amplitude inside branch").max(1);
    let (a, b) = (&pts[i - 1].state, &pts[i].state);
    let t = (s - pts[i - 1].amplitude) / (pts[i].amplitude - pts[i - 1].amplitude);
    let lerp = |x: f64, y: f64| x + t * (y - x);
    let w = a.w().scale(1.0 - t).axpy(t, b.w());
    let mut coeffs = w.cos_coeffs().to_vec();
    coeffs[0] = s;
    let w = PeriodicFunction::from_cosines(w.n_modes(), 0.0, coeffs).unwrap();
    let guess = WaveState::new(a.params, lerp(a.lambda, b.lambda), lerp(a.mu, b.mu), w).unwrap();
    newton_solve(&guess, Hold::Amplitude { mode: 1, value: s }, config).unwrap().state
}

#[test]
fn halving_the_step_stays_on_the_same_curve() {
    let (coarse, config) = trace(2e-3, 4e-3);
    let (fine, _) = trace(1e-3, 2e-3);
    assert!(fine.points.len() > coarse.points.len());
    let tol = 10.0 * config.newton_tol;
    for pt in coarse.points.iter().skip(1) {
        if pt.amplitude > fine.points.last().unwrap().amplitude {
            continue;
        }
        let other = state_at(&fine, pt.amplitude, &config);
        let dw = other.w().sub(pt.state.w()).max_abs();
        let dl = (other.lambda - pt.state.lambda).abs();
        let dm = (other.mu - pt.state.mu).abs();
        assert!(dw.max(dl).max(dm) <= tol, "s = {}: dw {dw:e}, dlambda {dl:e}, dmu {dm:e}", pt.amplitude);
    }
}

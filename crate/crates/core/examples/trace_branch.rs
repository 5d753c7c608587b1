//! Follows the λ₋ branch for γ = 2 by pseudo-arclength continuation and
//! reports how the flow parameters move with amplitude.

use vorwave::continuation::{trace_branch_until, BranchStart, SolverConfig};
use vorwave::{PhysicalParams, Side};

fn main() -> vorwave::Result<()> {
    let p = PhysicalParams::new(2.0, 1.0, 1.0, 1.0)?;
    let config = SolverConfig { n_modes: 64, ds: 2e-3, ..SolverConfig::default() };
    let start = BranchStart::from_dispersion(&p, 1, Side::Minus);
    let branch = trace_branch_until(&p, start, 60, Some(0.1), &config)?;

    println!("{:>12} {:>14} {:>14} {:>14} {:>5} {:>9}", "s", "lambda", "m", "Q", "iters", "residual");
    for pt in &branch.points {
        let st = &pt.state;
        println!(
            "{:12.6} {:14.10} {:14.10} {:14.10} {:5} {:9.1e}",
            pt.amplitude,
            st.lambda,
            st.m(),
            st.q(),
            pt.iterations,
            pt.residual_norm
        );
    }
    if let Some((c, order)) = branch.remainder_fit(0.02) {
        println!("|w - s cos x| ~ {c:.4} s^{order:.3}");
    }
    println!("{} points; folds at {:?}, truncated: {:?}", branch.points.len(), branch.folds, branch.truncated);
    Ok(())
}

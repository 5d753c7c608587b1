//! Stagnation points under a small wave on the λ₋ branch for γ = 2.
//!
//! The laminar flow at λ₋ has a horizontal stagnation line; the wave breaks
//! it into isolated centers and saddles (Kelvin's cat's eye).

use vorwave::continuation::{solve_at_amplitudes, BranchStart, SolverConfig};
use vorwave::field::{find_stagnation, reconstruct, GridSpec};
use vorwave::wave::stagnation_line_height;
use vorwave::{PhysicalParams, Side};

fn main() -> vorwave::Result<()> {
    let p = PhysicalParams::new(2.0, 1.0, 1.0, 1.0)?;
    let config = SolverConfig { n_modes: 128, ..SolverConfig::default() };
    println!("laminar stagnation line Y0 = {:.10}", stagnation_line_height(&p).unwrap());

    for side in [Side::Minus, Side::Plus] {
        let start = BranchStart::from_dispersion(&p, 1, side);
        let solved = solve_at_amplitudes(&p, start, &[0.01], &config)?.remove(0);
        let field = reconstruct(&solved.state, 0.0, GridSpec::for_modes(config.n_modes))?;
        let report = find_stagnation(&field)?;
        println!(
            "{} branch, s = 0.01: critical layer {}, {} stagnation points",
            side.label(),
            report.has_critical_layer,
            report.points.len()
        );
        for pt in &report.points {
            println!("  {:?} at X = {:.6}, Y = {:.6} (|u| = {:.1e})", pt.kind, pt.x, pt.y, pt.speed);
        }
    }
    Ok(())
}

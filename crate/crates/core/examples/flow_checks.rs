//! Reconstructs the flow under a small wave and checks the boundary
//! conditions, Bernoulli's law and `Δψ = -γ` under vertical refinement.

use vorwave::continuation::{solve_at_amplitudes, BranchStart, SolverConfig};
use vorwave::field::{reconstruct, surface_geometry, surface_speed_sides, GridSpec};
use vorwave::{PhysicalParams, Side};

fn main() -> vorwave::Result<()> {
    let config = SolverConfig { n_modes: 128, ..SolverConfig::default() };
    for gamma in [0.0, 2.0] {
        let p = PhysicalParams::new(gamma, 1.0, 1.0, 1.0)?;
        for side in [Side::Plus, Side::Minus] {
            let start = BranchStart::from_dispersion(&p, 1, side);
            let state = solve_at_amplitudes(&p, start, &[0.01], &config)?.remove(0).state;
            let curve = surface_geometry(&state, 0.0)?;
            let (lhs, rhs) = surface_speed_sides(&state)?;
            println!(
                "gamma {gamma}, {}: compatibility {:.1e}, speed identity {:.1e}",
                side.label(),
                curve.compatibility_error,
                lhs.sub(&rhs).max_abs()
            );
            let mut prev: Option<(f64, f64, f64)> = None;
            for ny in [32, 64, 128] {
                let f = reconstruct(&state, 0.0, GridSpec { nx: 256, ny })?;
                let (top, bed) = f.boundary_errors()?;
                let lap = f.laplacian_defect()?;
                let (cr1, cr2) = f.cauchy_riemann_defect();
                let cr = cr1.max(cr2);
                let orders = prev.map(|(l, c, h)| {
                    let ratio = h / f.grid.dy();
                    ((l / lap).ln() / ratio.ln(), (c / cr).ln() / ratio.ln())
                });
                println!(
                    "  ny {ny:4}: psi top {top:.1e} bed {bed:.1e}, bernoulli {:.1e}, laplacian {lap:.2e}, CR {cr:.2e}, orders {orders:.2?}",
                    f.bernoulli_residual()?
                );
                prev = Some((lap, cr, f.grid.dy()));
            }
        }
    }
    Ok(())
}

//! Physical free surface of a moderate wave: the parametrized curve, the
//! surface angle and the checks that the conformal description is valid.

use vorwave::continuation::{solve_at_amplitudes, BranchStart, SolverConfig};
use vorwave::field::{find_self_intersection, surface_geometry, validity_flags};
use vorwave::{PhysicalParams, Side};

fn main() -> vorwave::Result<()> {
    let p = PhysicalParams::new(-1.0, 1.0, 1.0, 1.0)?;
    let config = SolverConfig { n_modes: 64, ..SolverConfig::default() };
    let start = BranchStart::from_dispersion(&p, 1, Side::Plus);
    let state = solve_at_amplitudes(&p, start, &[0.05], &config)?.remove(0).state;

    let curve = surface_geometry(&state, 0.0)?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = curve.points.iter().copied().unzip();
    let crest = ys.iter().cloned().fold(f64::MIN, f64::max);
    let trough = ys.iter().cloned().fold(f64::MAX, f64::min);
    println!("crest {crest:.8}, trough {trough:.8}, height {:.8}", crest - trough);
    println!("max slope angle {:.6} rad", curve.theta0.max_abs());
    println!("min |surface speed| {:.6}", curve.speed.min_value());
    println!("angle/speed compatibility {:.1e}", curve.compatibility_error);
    println!("validity {:?}", validity_flags(&state));
    println!("self-intersection {:?}", find_self_intersection(&xs, &ys, p.wavelength()));
    for (x, y) in curve.points.iter().step_by(16) {
        println!("  X = {x:+.6}  Y = {y:.8}");
    }
    Ok(())
}

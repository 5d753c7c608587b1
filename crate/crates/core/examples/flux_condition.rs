//! For positive vorticity and `k = 1`, a negative flux `m` is reached by a
//! bifurcating laminar flow exactly when a closed-form inequality holds.
//! Compares that inequality with a direct root search.

use vorwave::wave::flux_condition_cs;
use vorwave::PhysicalParams;

fn main() -> vorwave::Result<()> {
    let p = PhysicalParams::new(1.5, 1.0, 1.0, 1.0)?;
    for m in [-0.05, -0.2, -0.5, -1.0, -2.0, -4.0] {
        let r = flux_condition_cs(m, &p)?;
        println!(
            "m = {m:5}: tanh(sqrt(-2m/g)) = {:.6} vs {:.6} -> {:5}; root lambda {:?}, h {:?}; agree {}",
            r.lhs,
            r.rhs,
            r.condition_holds,
            r.lambda_root,
            r.h_root,
            r.agrees()
        );
    }
    Ok(())
}

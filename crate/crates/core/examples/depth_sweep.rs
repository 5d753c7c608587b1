//! Bifurcating fluxes `m±(h)` for γ = 2 over a depth range, with the depth
//! where `m₋` vanishes and the depth where laminar stagnation first appears.

use vorwave::continuation::{sweep_surface, SolverConfig, SweepSpec};

fn main() -> vorwave::Result<()> {
    let spec = SweepSpec::uniform(2.0, 1.0, 1.0, 0.05, 5.0, 100)?;
    let result = sweep_surface(&spec, &SolverConfig::default())?;
    for cell in result.cells.iter().step_by(10) {
        println!(
            "h = {:5.3}: m+ = {:+.6}, m- = {:+.6}, stagnation {:5}, gaps {:.3} {:.3}",
            cell.h, cell.m_plus, cell.m_minus, cell.stp_holds, cell.gap_plus, cell.gap_minus
        );
    }
    println!("m- changes sign {} time(s)", result.minus_sign_changes());
    println!("m-(h) = 0 at h = {:?}", result.h_flux_zero);
    println!("stagnation from h = {:?}", result.h_stagnation);
    Ok(())
}

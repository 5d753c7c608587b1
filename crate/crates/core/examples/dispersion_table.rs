//! Bifurcation speeds `λ±` for the first few modes, the fluxes `m±` and the
//! laminar stagnation criterion, for a range of vorticities.

use vorwave::wave::{bifurcating_flux, dispersion_lambdas, stagnation_criterion, stagnation_line_height, transversality};
use vorwave::PhysicalParams;

fn main() -> vorwave::Result<()> {
    for gamma in [-4.0, -1.0, 0.0, 1.0, 2.0, 4.0] {
        let p = PhysicalParams::new(gamma, 1.0, 1.0, 1.0)?;
        println!("gamma = {gamma}");
        for n in 1..=3 {
            let (plus, minus) = dispersion_lambdas(n, &p);
            println!(
                "  n = {n}: lambda+ = {plus:+.8} (t = {:+.4}), lambda- = {minus:+.8} (t = {:+.4})",
                transversality(plus, n, &p),
                transversality(minus, n, &p)
            );
        }
        let (m_plus, m_minus) = bifurcating_flux(&p);
        let crit = stagnation_criterion(&p);
        println!(
            "  m+ = {m_plus:+.8}, m- = {m_minus:+.8}; tanh(kh)/kh = {:.5} vs {:.5}: stagnation {}",
            crit.lhs,
            crit.rhs,
            match stagnation_line_height(&p) {
                Some(y) => format!("line at Y0 = {y:.8}"),
                None => "absent".into(),
            }
        );
    }
    Ok(())
}

//! The strip operators acting on single modes and on a sampled profile.
//!
//! `C_d` rotates `cos(nx)` into `coth(nd) sin(nx)`; as `d` grows it tends to
//! the conjugate-function transform and `K_d = C_d - C` decays like `e^{-2nd}`.

use vorwave::operators::{
    commutator_q, dirichlet_neumann, hilbert_infinite, hilbert_strip, kernel_correction, KernelTable, StripDepth,
};
use vorwave::PeriodicFunction;

fn main() -> vorwave::Result<()> {
    let n_modes = 32;
    for d in [0.3, 1.0, 3.0] {
        let depth = StripDepth::new(d)?;
        let table = KernelTable::new(depth, n_modes);
        let cos3 = PeriodicFunction::cosine(n_modes, 3, 1.0);
        let c = hilbert_strip(&cos3, depth)?;
        let k = kernel_correction(&cos3, &table)?;
        println!(
            "d = {d}: C_d(cos 3x) = {:.6} sin 3x, K_d(cos 3x) = {:.3e} sin 3x, G_d(1) = {:.6}",
            c.sin_coeff(3),
            k.sin_coeff(3),
            dirichlet_neumann(&PeriodicFunction::constant(n_modes, 1.0), depth).mean()
        );
    }

    // Real and imaginary parts of exp(e^{ix}) are a conjugate pair.
    let f = PeriodicFunction::from_fn(n_modes, |x| x.cos().exp() * x.sin().cos())?;
    let f0 = f.without_mean();
    let conj = hilbert_infinite(&f0)?;
    let exact = PeriodicFunction::from_fn(n_modes, |x| x.cos().exp() * x.sin().sin())?;
    println!("conjugate of Re exp(e^ix): max error {:.2e}", conj.sub(&exact).max_abs());

    let q = commutator_q(&f, StripDepth::new(1.0)?);
    println!("commutator Q_1(Re exp(e^ix)): max |Q| = {:.6}, mean {:.6}", q.max_abs(), q.mean());
    Ok(())
}

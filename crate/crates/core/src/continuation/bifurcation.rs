use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::newton::unknowns_for;
use super::Hold;
use crate::wave::{dispersion_lambdas, transversality, Linearization, PhysicalParams, Side, WaveState};

/// A simple bifurcation point `(λ*, (0, 0))` of the trivial branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BifurcationPoint {
    pub mode: usize,
    pub lambda_star: f64,
    pub side: Side,
    /// Singular values of the linearization on `(μ, a_1, …, a_{N-1})`.
    pub sigma_min: f64,
    pub sigma_second: f64,
    pub sigma_max: f64,
    /// `|⟨null vector, cos(mode·x)⟩|` in coefficient space.
    pub null_overlap: f64,
    /// `-γ - 2λ* n k coth(nkh)`.
    pub transversality: f64,
}

impl BifurcationPoint {
    /// One-dimensional kernel: a vanishing singular value well separated from the rest.
    pub fn is_simple(&self, zero_tol: f64, gap: f64) -> bool {
        self.sigma_min <= zero_tol && self.sigma_second >= gap * self.sigma_max
    }
}

fn trivial_linearization(p: &PhysicalParams, lambda: f64, n_modes: usize) -> DMatrix<f64> {
    let lin = Linearization::new(&WaveState::trivial(*p, lambda, n_modes));
    lin.assemble(&unknowns_for(Hold::Lambda, n_modes))
}

/// Locates the `2·n_max` bifurcation points and checks each kernel.
pub fn find_bifurcation_points(p: &PhysicalParams, n_max: usize, n_modes: usize) -> Vec<BifurcationPoint> {
    assert!(n_max >= 1 && n_max < n_modes, "need 1 <= n_max < n_modes");
    let mut out = Vec::with_capacity(2 * n_max);
    for n in 1..=n_max {
        let roots = dispersion_lambdas(n, p);
        for side in [Side::Plus, Side::Minus] {
            let lambda_star = side.pick(roots);
            let svd = trivial_linearization(p, lambda_star, n_modes).svd(false, true);
            let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
            order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
            let v_t = svd.v_t.as_ref().expect("requested right singular vectors");
            // Column `n` of the unknown list is `a_n`.
            let null_overlap = v_t[(order[0], n)].abs();
            out.push(BifurcationPoint {
                mode: n,
                lambda_star,
                side,
                sigma_min: svd.singular_values[order[0]],
                sigma_second: svd.singular_values[order[1]],
                sigma_max: svd.singular_values[*order.last().unwrap()],
                null_overlap,
                transversality: transversality(lambda_star, n, p),
            });
        }
    }
    out
}

/// Sign of the determinant of the trivial linearization with the row and
/// column of mode `excluded` removed.
pub fn restricted_determinant_sign(p: &PhysicalParams, lambda: f64, excluded: usize, n_modes: usize) -> f64 {
    let full = trivial_linearization(p, lambda, n_modes);
    let keep: Vec<usize> = (0..n_modes).filter(|&i| i != excluded).collect();
    let sub = DMatrix::from_fn(keep.len(), keep.len(), |i, j| full[(keep[i], keep[j])]);
    // Product of pivots overflows for large N, so only signs are tracked.
    let lu = sub.lu();
    let mut sign = if lu.p().determinant::<f64>() < 0.0 { -1.0 } else { 1.0 };
    let u = lu.u();
    for i in 0..keep.len() {
        let d = u[(i, i)];
        if d == 0.0 {
            return 0.0;
        }
        sign *= d.signum();
    }
    sign
}

//! Fourier-multiplier operators for 2π-periodic harmonic functions in the
//! strip `-d < y < 0`.
//!
//! With `w = [w] + Σ a_n cos(nx) + b_n sin(nx)`:
//!
//! | operator | action on `(a_n, b_n)` | mean |
//! |---|---|---|
//! | `hilbert_strip` (`C_d`) | `cos: -b_n coth(nd)`, `sin: a_n coth(nd)` | zero-mean input only |
//! | `dirichlet_neumann` (`G_d`) | `n coth(nd) · (a_n, b_n)` | `[w]/d` |
//! | `hilbert_infinite` (`C`) | `cos: -b_n`, `sin: a_n` | zero-mean input only |
//! | `kernel_correction` (`K_d`) | `cos: -λ_n b_n`, `sin: λ_n a_n` | zero-mean input only |
//!
//! where `λ_n = 2/(e^{2nd} - 1)` and `coth(nd) = 1 + λ_n`. The sine Nyquist
//! mode is not representable on the grid, so rotation-type operators send
//! the cosine Nyquist mode to zero.

use crate::error::{Error, Result};
use crate::spectral::PeriodicFunction;

/// Tolerance for the zero-mean precondition, relative to the size of `w`.
pub const MEAN_TOL: f64 = 1e-12;

/// Depth `d > 0` of the strip `R_d`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct StripDepth(f64);

impl StripDepth {
    pub fn new(d: f64) -> Result<Self> {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::InvalidParams(format!("strip depth must be positive and finite, got {d}")));
        }
        Ok(Self(d))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `λ_n = 2/(e^{2nd} - 1)`.
    pub fn lambda(self, n: usize) -> f64 {
        2.0 / (2.0 * n as f64 * self.0).exp_m1()
    }

    /// `coth(nd)` as `1 + λ_n`.
    pub fn coth(self, n: usize) -> f64 {
        1.0 + self.lambda(n)
    }
}

/// Multipliers `λ_n` and samples of `κ_d(t) = Σ 2 λ_n sin(nt)` for one `(d, N)`.
#[derive(Debug, Clone)]
pub struct KernelTable {
    depth: StripDepth,
    lambda: Vec<f64>,
    kappa: PeriodicFunction,
}

impl KernelTable {
    pub fn new(depth: StripDepth, n_modes: usize) -> Self {
        let lambda: Vec<f64> = (1..=n_modes).map(|n| depth.lambda(n)).collect();
        let mut b: Vec<f64> = lambda.iter().map(|l| 2.0 * l).collect();
        b[n_modes - 1] = 0.0;
        let kappa = PeriodicFunction::from_coefficients(n_modes, 0.0, vec![0.0; n_modes], b)
            .expect("finite kernel coefficients");
        Self { depth, lambda, kappa }
    }

    pub fn depth(&self) -> StripDepth {
        self.depth
    }

    pub fn n_modes(&self) -> usize {
        self.lambda.len()
    }

    /// `λ_1..λ_N` (index `n - 1`).
    pub fn lambdas(&self) -> &[f64] {
        &self.lambda
    }

    /// `κ_d` at the collocation points.
    pub fn kappa_values(&self) -> &[f64] {
        self.kappa.values()
    }

    pub fn kappa(&self) -> &PeriodicFunction {
        &self.kappa
    }

    /// `K_d(w)` by trapezoidal quadrature of `(1/2π)∫ κ_d(t - s) w(s) ds`
    /// on the collocation grid.
    pub fn convolve_quadrature(&self, w: &PeriodicFunction) -> Result<PeriodicFunction> {
        require_zero_mean(w)?;
        let n = self.n_modes();
        assert_eq!(w.n_modes(), n, "mode count mismatch");
        let len = 2 * n;
        let kv = self.kappa.values();
        let wv = w.values();
        // Trapezoidal weight 2π/len times 1/(2π).
        let out: Vec<f64> = (0..len)
            .map(|i| (0..len).map(|j| kv[(i + len - j) % len] * wv[j]).sum::<f64>() / len as f64)
            .collect();
        PeriodicFunction::from_values(out)
    }
}

fn require_zero_mean(w: &PeriodicFunction) -> Result<()> {
    let scale = w.max_abs().max(1.0);
    if w.mean().abs() > MEAN_TOL * scale {
        return Err(Error::NonZeroMean { mean: w.mean() });
    }
    Ok(())
}

/// Applies the quarter-period rotation `cos(nx) -> m_n sin(nx)`, `sin(nx) -> -m_n cos(nx)`.
fn rotate(w: &PeriodicFunction, multiplier: impl Fn(usize) -> f64) -> PeriodicFunction {
    let n_modes = w.n_modes();
    w.map_coefficients(|_, a, b| {
        let mut ra = vec![0.0; n_modes];
        let mut rb = vec![0.0; n_modes];
        for n in 1..n_modes {
            let m = multiplier(n);
            ra[n - 1] = -m * b[n - 1];
            rb[n - 1] = m * a[n - 1];
        }
        (0.0, ra, rb)
    })
}

/// Periodic Hilbert transform for the strip of depth `d`.
pub fn hilbert_strip(w: &PeriodicFunction, d: StripDepth) -> Result<PeriodicFunction> {
    require_zero_mean(w)?;
    Ok(rotate(w, |n| d.coth(n)))
}

/// Inverse of [`hilbert_strip`] on zero-mean functions.
pub fn hilbert_strip_inverse(w: &PeriodicFunction, d: StripDepth) -> Result<PeriodicFunction> {
    require_zero_mean(w)?;
    Ok(rotate(w, |n| -1.0 / d.coth(n)))
}

/// Conjugate-function transform (the `d → ∞` limit of [`hilbert_strip`]).
pub fn hilbert_infinite(w: &PeriodicFunction) -> Result<PeriodicFunction> {
    require_zero_mean(w)?;
    Ok(rotate(w, |_| 1.0))
}

/// Smooth remainder `K_d = C_d - C`, computed with the multipliers `λ_n`.
pub fn kernel_correction(w: &PeriodicFunction, table: &KernelTable) -> Result<PeriodicFunction> {
    require_zero_mean(w)?;
    assert_eq!(w.n_modes(), table.n_modes(), "mode count mismatch");
    Ok(rotate(w, |n| table.lambda[n - 1]))
}

/// Dirichlet–Neumann operator `G_d`; constants map to `c/d`.
pub fn dirichlet_neumann(w: &PeriodicFunction, d: StripDepth) -> PeriodicFunction {
    let n_modes = w.n_modes();
    w.map_coefficients(|mean, a, b| {
        let mut ga = vec![0.0; n_modes];
        let mut gb = vec![0.0; n_modes];
        for n in 1..=n_modes {
            let m = n as f64 * d.coth(n);
            ga[n - 1] = m * a[n - 1];
            gb[n - 1] = m * b[n - 1];
        }
        (mean / d.get(), ga, gb)
    })
}

/// `w·w'` with its (exactly vanishing) mean removed.
///
/// `w w' = (w²/2)'` has zero mean; a mean larger than rounding indicates a bug.
pub(crate) fn product_with_derivative(w: &PeriodicFunction, dw: &PeriodicFunction) -> PeriodicFunction {
    let p = w.multiply(dw);
    debug_assert!(
        p.mean().abs() <= 1e-10 * (1.0 + w.max_abs() * dw.max_abs()),
        "mean of w w' = {}",
        p.mean()
    );
    p.without_mean()
}

/// Commutator `Q_d(w) = w C_d(w') - C_d(w w')`.
pub fn commutator_q(w: &PeriodicFunction, d: StripDepth) -> PeriodicFunction {
    let dw = w.differentiate();
    let c_dw = hilbert_strip(&dw, d).expect("derivative has zero mean");
    let wdw = product_with_derivative(w, &dw);
    let c_wdw = hilbert_strip(&wdw, d).expect("mean removed");
    w.multiply(&c_dw).sub(&c_wdw)
}

/// Infinite-depth commutator `Q(w) = w C(w') - C(w w')`.
pub fn commutator_q_infinite(w: &PeriodicFunction) -> PeriodicFunction {
    let dw = w.differentiate();
    let c_dw = hilbert_infinite(&dw).expect("derivative has zero mean");
    let wdw = product_with_derivative(w, &dw);
    let c_wdw = hilbert_infinite(&wdw).expect("mean removed");
    w.multiply(&c_dw).sub(&c_wdw)
}

/// Smooth part `w K_d(w') - K_d(w w')` of `Q_d - Q`.
pub fn commutator_smooth_part(w: &PeriodicFunction, table: &KernelTable) -> PeriodicFunction {
    let dw = w.differentiate();
    let k_dw = kernel_correction(&dw, table).expect("derivative has zero mean");
    let wdw = product_with_derivative(w, &dw);
    let k_wdw = kernel_correction(&wdw, table).expect("mean removed");
    w.multiply(&k_dw).sub(&k_wdw)
}

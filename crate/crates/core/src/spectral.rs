//! Uniform-grid representation of real 2π-periodic functions.
//!
//! A [`PeriodicFunction`] with `n_modes = N` lives on the `2N` collocation
//! points `x_j = jπ/N` and carries both its samples and its real Fourier
//! coefficients
//!
//! ```text
//! w(x) = [w] + Σ_{n=1}^{N} a_n cos(nx) + Σ_{n=1}^{N} b_n sin(nx)
//! ```
//!
//! The sine Nyquist coefficient `b_N` vanishes on the grid and is always
//! stored as zero. Values and coefficients are kept consistent; every
//! operation returns a new function.

use std::cell::RefCell;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn forward_plan(len: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(len))
}

fn inverse_plan(len: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(len))
}

/// Parity of a periodic function about `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryClass {
    Even,
    Odd,
    None,
}

/// A real 2π-periodic trigonometric polynomial sampled on `2N` points.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicFunction {
    n_modes: usize,
    values: Vec<f64>,
    mean: f64,
    a: Vec<f64>,
    b: Vec<f64>,
}

/// Flat coefficient record used by the file formats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientRecord {
    pub n_modes: usize,
    pub mean: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

/// Collocation point `x_j = jπ/N`.
pub fn grid_point(n_modes: usize, j: usize) -> f64 {
    j as f64 * std::f64::consts::PI / n_modes as f64
}

/// All `2N` collocation points.
pub fn grid(n_modes: usize) -> Vec<f64> {
    (0..2 * n_modes).map(|j| grid_point(n_modes, j)).collect()
}

/// Discrete Fourier analysis of `2N` samples into `([w], a, b)`.
fn analyze(values: &[f64]) -> (f64, Vec<f64>, Vec<f64>) {
    let len = values.len();
    let n = len / 2;
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    forward_plan(len).process(&mut buf);
    let scale = 1.0 / len as f64;
    let mean = buf[0].re * scale;
    let mut a = vec![0.0; n];
    let mut b = vec![0.0; n];
    for k in 1..n {
        a[k - 1] = 2.0 * buf[k].re * scale;
        b[k - 1] = -2.0 * buf[k].im * scale;
    }
    a[n - 1] = buf[n].re * scale;
    (mean, a, b)
}

/// Synthesis of `([w], a, b)` with `a.len() == N` onto a grid of `len ≥ 2N` points.
fn synthesize(mean: f64, a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let n = a.len();
    debug_assert!(len >= 2 * n && len.is_multiple_of(2));
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    buf[0] = Complex64::new(mean, 0.0);
    for k in 1..n {
        let c = Complex64::new(0.5 * a[k - 1], -0.5 * b[k - 1]);
        buf[k] = c;
        buf[len - k] = c.conj();
    }
    if len == 2 * n {
        buf[n] = Complex64::new(a[n - 1], 0.0);
    } else {
        // On a finer grid the mode N is an ordinary mode.
        let c = Complex64::new(0.5 * a[n - 1], -0.5 * b[n - 1]);
        buf[n] = c;
        buf[len - n] = c.conj();
    }
    inverse_plan(len).process(&mut buf);
    buf.into_iter().map(|c| c.re).collect()
}

fn check_n_modes(n_modes: usize) -> Result<()> {
    if n_modes < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 modes (4 collocation points), got {n_modes}"
        )));
    }
    Ok(())
}

fn check_finite(what: &str, xs: &[f64]) -> Result<()> {
    if let Some(i) = xs.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite(format!("{what}[{i}] = {}", xs[i])));
    }
    Ok(())
}

impl PeriodicFunction {
    /// Builds a function from its samples on the `2N` collocation points.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let len = values.len();
        if !len.is_multiple_of(2) || len < 4 {
            return Err(Error::InvalidGrid(format!(
                "collocation array must have even length >= 4, got {len}"
            )));
        }
        check_finite("values", &values)?;
        let (mean, a, b) = analyze(&values);
        Ok(Self { n_modes: len / 2, values, mean, a, b })
    }

    /// Builds a function from `([w], a_1..a_N, b_1..b_N)`.
    ///
    /// `b_N` must be zero since `sin(Nx)` vanishes on the grid.
    pub fn from_coefficients(n_modes: usize, mean: f64, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        check_n_modes(n_modes)?;
        if a.len() != n_modes || b.len() != n_modes {
            return Err(Error::InvalidGrid(format!(
                "expected {n_modes} cosine and sine coefficients, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        if b[n_modes - 1] != 0.0 {
            return Err(Error::InvalidGrid(format!(
                "sine coefficient of the Nyquist mode {n_modes} is not representable"
            )));
        }
        check_finite("a", &a)?;
        check_finite("b", &b)?;
        check_finite("mean", &[mean])?;
        let values = synthesize(mean, &a, &b, 2 * n_modes);
        Ok(Self { n_modes, values, mean, a, b })
    }

    /// Even function from its mean and cosine coefficients `a_1..a_N`.
    pub fn from_cosines(n_modes: usize, mean: f64, a: Vec<f64>) -> Result<Self> {
        Self::from_coefficients(n_modes, mean, a, vec![0.0; n_modes])
    }

    /// Samples `f` on the collocation grid.
    pub fn from_fn(n_modes: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        check_n_modes(n_modes)?;
        Self::from_values(grid(n_modes).into_iter().map(f).collect())
    }

    pub fn zero(n_modes: usize) -> Self {
        Self::constant(n_modes, 0.0)
    }

    pub fn constant(n_modes: usize, c: f64) -> Self {
        assert!(n_modes >= 2, "need at least 2 modes");
        Self {
            n_modes,
            values: vec![c; 2 * n_modes],
            mean: c,
            a: vec![0.0; n_modes],
            b: vec![0.0; n_modes],
        }
    }

    /// `amplitude · cos(mode · x)`.
    pub fn cosine(n_modes: usize, mode: usize, amplitude: f64) -> Self {
        assert!(mode >= 1 && mode <= n_modes, "mode {mode} outside 1..={n_modes}");
        let mut a = vec![0.0; n_modes];
        a[mode - 1] = amplitude;
        Self::from_cosines(n_modes, 0.0, a).expect("valid cosine mode")
    }

    /// `amplitude · sin(mode · x)`, `mode < N`.
    pub fn sine(n_modes: usize, mode: usize, amplitude: f64) -> Self {
        assert!(mode >= 1 && mode < n_modes, "mode {mode} outside 1..{n_modes}");
        let mut b = vec![0.0; n_modes];
        b[mode - 1] = amplitude;
        Self::from_coefficients(n_modes, 0.0, vec![0.0; n_modes], b).expect("valid sine mode")
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Mean value `[w]`.
    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Cosine coefficients `a_1..a_N` (index `n - 1`).
    pub fn cos_coeffs(&self) -> &[f64] {
        &self.a
    }

    /// Sine coefficients `b_1..b_N` (index `n - 1`).
    pub fn sin_coeffs(&self) -> &[f64] {
        &self.b
    }

    pub fn cos_coeff(&self, n: usize) -> f64 {
        self.a[n - 1]
    }

    pub fn sin_coeff(&self, n: usize) -> f64 {
        self.b[n - 1]
    }

    /// Evaluates the trigonometric interpolant at an arbitrary point.
    pub fn eval(&self, x: f64) -> f64 {
        let mut s = self.mean;
        for n in 1..=self.n_modes {
            let (sn, cn) = (n as f64 * x).sin_cos();
            s += self.a[n - 1] * cn + self.b[n - 1] * sn;
        }
        s
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Root-mean-square of the samples, `((1/2π)∫w²)^{1/2}` for resolved functions.
    pub fn rms(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() / self.values.len() as f64).sqrt()
    }

    /// `([w]² + Σ(a_n² + b_n²))^{1/2}`.
    pub fn coefficient_norm(&self) -> f64 {
        let s: f64 = self.a.iter().chain(&self.b).map(|c| c * c).sum();
        (self.mean * self.mean + s).sqrt()
    }

    /// Classifies the parity within `tol` relative to the largest coefficient.
    pub fn symmetry(&self, tol: f64) -> SymmetryClass {
        let scale = self
            .a
            .iter()
            .chain(&self.b)
            .chain(std::iter::once(&self.mean))
            .fold(0.0f64, |m, c| m.max(c.abs()))
            .max(f64::MIN_POSITIVE);
        let odd_part = self.b.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let even_part = self.a.iter().fold(self.mean.abs(), |m, c| m.max(c.abs()));
        if odd_part <= tol * scale {
            SymmetryClass::Even
        } else if even_part <= tol * scale {
            SymmetryClass::Odd
        } else {
            SymmetryClass::None
        }
    }

    /// Projection onto the even subspace (drops all sine coefficients).
    pub fn even_part(&self) -> Self {
        Self::from_cosines(self.n_modes, self.mean, self.a.clone()).expect("valid")
    }

    pub fn without_mean(&self) -> Self {
        self.with_mean(0.0)
    }

    pub fn with_mean(&self, mean: f64) -> Self {
        let shift = mean - self.mean;
        Self {
            n_modes: self.n_modes,
            values: self.values.iter().map(|v| v + shift).collect(),
            mean,
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    /// Coefficient-space map `(mean, a, b) -> (mean', a', b')`.
    pub(crate) fn map_coefficients(
        &self,
        f: impl FnOnce(f64, &[f64], &[f64]) -> (f64, Vec<f64>, Vec<f64>),
    ) -> Self {
        let (mean, a, mut b) = f(self.mean, &self.a, &self.b);
        b[self.n_modes - 1] = 0.0;
        Self::from_coefficients(self.n_modes, mean, a, b).expect("coefficient map preserves shape")
    }

    /// Pointwise map on the collocation samples (no dealiasing).
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_values(self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            n_modes: self.n_modes,
            values: self.values.iter().map(|v| c * v).collect(),
            mean: c * self.mean,
            a: self.a.iter().map(|v| c * v).collect(),
            b: self.b.iter().map(|v| c * v).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(-1.0, other)
    }

    /// `self + c · other`.
    pub fn axpy(&self, c: f64, other: &Self) -> Self {
        assert_eq!(self.n_modes, other.n_modes, "mode count mismatch");
        let zip = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p + c * q).collect();
        Self {
            n_modes: self.n_modes,
            values: zip(&self.values, &other.values),
            mean: self.mean + c * other.mean,
            a: zip(&self.a, &other.a),
            b: zip(&self.b, &other.b),
        }
    }

    pub fn add_constant(&self, c: f64) -> Self {
        self.with_mean(self.mean + c)
    }

    /// Derivative: `(a_n, b_n) -> (n b_n, -n a_n)`; the Nyquist mode maps to zero.
    pub fn differentiate(&self) -> Self {
        let n_modes = self.n_modes;
        self.map_coefficients(|_, a, b| {
            let mut da = vec![0.0; n_modes];
            let mut db = vec![0.0; n_modes];
            for n in 1..n_modes {
                da[n - 1] = n as f64 * b[n - 1];
                db[n - 1] = -(n as f64) * a[n - 1];
            }
            (0.0, da, db)
        })
    }

    /// Dealiased product: both factors are evaluated on a grid twice as fine,
    /// multiplied pointwise and truncated back to `N` modes.
    pub fn multiply(&self, other: &Self) -> Self {
        let (u, v) = match self.n_modes.cmp(&other.n_modes) {
            std::cmp::Ordering::Equal => (self.clone(), other.clone()),
            std::cmp::Ordering::Less => (self.resample(other.n_modes), other.clone()),
            std::cmp::Ordering::Greater => (self.clone(), other.resample(self.n_modes)),
        };
        let n = u.n_modes;
        let fine = 4 * n;
        let uf = synthesize(u.mean, &u.a, &u.b, fine);
        let vf = synthesize(v.mean, &v.a, &v.b, fine);
        let prod: Vec<f64> = uf.iter().zip(&vf).map(|(p, q)| p * q).collect();
        let (mean, a_f, b_f) = analyze(&prod);
        let a = a_f[..n].to_vec();
        let mut b = b_f[..n].to_vec();
        b[n - 1] = 0.0;
        Self::from_coefficients(n, mean, a, b).expect("product of finite functions")
    }

    pub fn square(&self) -> Self {
        self.multiply(self)
    }

    /// Zero-pads or truncates the spectrum to `n_modes`.
    pub fn resample(&self, n_modes: usize) -> Self {
        let mut a = vec![0.0; n_modes];
        let mut b = vec![0.0; n_modes];
        let m = n_modes.min(self.n_modes);
        a[..m].copy_from_slice(&self.a[..m]);
        b[..m].copy_from_slice(&self.b[..m]);
        b[n_modes - 1] = 0.0;
        Self::from_coefficients(n_modes, self.mean, a, b).expect("resampled")
    }

    pub fn to_record(&self) -> CoefficientRecord {
        CoefficientRecord {
            n_modes: self.n_modes,
            mean: self.mean,
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    pub fn from_record(record: &CoefficientRecord) -> Result<Self> {
        Self::from_coefficients(record.n_modes, record.mean, record.a.clone(), record.b.clone())
    }
}

/// Alias for the values → coefficients transform.
pub fn to_coefficients(values: &[f64]) -> Result<PeriodicFunction> {
    PeriodicFunction::from_values(values.to_vec())
}

pub fn differentiate(w: &PeriodicFunction) -> PeriodicFunction {
    w.differentiate()
}

pub fn multiply(u: &PeriodicFunction, v: &PeriodicFunction) -> PeriodicFunction {
    u.multiply(v)
}

pub fn mean(w: &PeriodicFunction) -> f64 {
    w.mean()
}

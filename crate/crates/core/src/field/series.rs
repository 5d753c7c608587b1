//! Harmonic functions on the strip `-d < y < 0` given by their top values,
//! evaluated in closed form mode by mode.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::StripDepth;
use crate::spectral::PeriodicFunction;

/// Uniform grid over `[0, 2π) × [-d, 0]`; row `0` is the bed, row `ny-1` the top.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StripGrid {
    pub nx: usize,
    pub ny: usize,
    pub depth: f64,
}

impl StripGrid {
    pub fn new(nx: usize, ny: usize, depth: StripDepth) -> Result<Self> {
        if nx < 2 || ny < 3 {
            return Err(Error::InvalidGrid(format!("need nx >= 2 and ny >= 3, got {nx} x {ny}")));
        }
        Ok(Self { nx, ny, depth: depth.get() })
    }

    pub fn x(&self, i: usize) -> f64 {
        2.0 * std::f64::consts::PI * i as f64 / self.nx as f64
    }

    pub fn y(&self, j: usize) -> f64 {
        if j + 1 == self.ny {
            0.0
        } else {
            -self.depth + self.depth * j as f64 / (self.ny - 1) as f64
        }
    }

    pub fn dx(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        self.depth / (self.ny - 1) as f64
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.nx).map(|i| self.x(i)).collect()
    }

    pub fn ys(&self) -> Vec<f64> {
        (0..self.ny).map(|j| self.y(j)).collect()
    }

    /// Row-major index.
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Values of a harmonic extension on a [`StripGrid`], row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionField {
    pub grid: StripGrid,
    pub values: Vec<f64>,
}

impl ExtensionField {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    pub fn row(&self, j: usize) -> &[f64] {
        &self.values[j * self.grid.nx..(j + 1) * self.grid.nx]
    }
}

/// Value and derivatives of `W` and its conjugate `Z` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HarmonicSample {
    pub value: f64,
    pub dx: f64,
    pub dy: f64,
    pub dxx: f64,
    /// Conjugate `Z` with `Z_x = W_y`, `Z_y = -W_x`, `Z(0, 0) = 0` up to the mean term.
    pub conj: f64,
}

/// `W(x, y) = [w](y+d)/d + Σ S_n(y)(a_n cos nx + b_n sin nx)` with
/// `S_n = sinh(n(y+d))/sinh(nd)`, and its conjugate
/// `Z = [w]x/d + Σ C_n(y)(a_n sin nx - b_n cos nx)` with `C_n = cosh(n(y+d))/sinh(nd)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSeries {
    depth: f64,
    mean: f64,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl HarmonicSeries {
    pub fn new(boundary: &PeriodicFunction, depth: StripDepth) -> Self {
        Self {
            depth: depth.get(),
            mean: boundary.mean(),
            a: boundary.cos_coeffs().to_vec(),
            b: boundary.sin_coeffs().to_vec(),
        }
    }

    pub fn depth(&self) -> f64 {
        self.depth
    }

    pub fn n_modes(&self) -> usize {
        self.a.len()
    }

    /// Whether every nonconstant mode vanishes.
    pub fn is_flat(&self) -> bool {
        self.a.iter().chain(&self.b).all(|c| *c == 0.0)
    }

    /// `(S_n(y), C_n(y))` in exponential-difference form, safe for large `n(y+d)`.
    fn profiles(&self, n: usize, y: f64) -> (f64, f64) {
        let nf = n as f64;
        let top = (nf * y).exp();
        let denom = -(-2.0 * nf * self.depth).exp_m1();
        let e = (-2.0 * nf * (y + self.depth)).exp();
        (top * (-(-2.0 * nf * (y + self.depth)).exp_m1()) / denom, top * (1.0 + e) / denom)
    }

    pub fn eval(&self, x: f64, y: f64) -> HarmonicSample {
        let d = self.depth;
        let mut s = HarmonicSample {
            value: self.mean * (y + d) / d,
            dx: 0.0,
            dy: self.mean / d,
            dxx: 0.0,
            conj: self.mean * x / d,
        };
        for (idx, (&a, &b)) in self.a.iter().zip(&self.b).enumerate() {
            if a == 0.0 && b == 0.0 {
                continue;
            }
            let n = idx + 1;
            let nf = n as f64;
            let (sn, cn) = self.profiles(n, y);
            let (sin, cos) = (nf * x).sin_cos();
            let even = a * cos + b * sin;
            let odd = a * sin - b * cos;
            s.value += sn * even;
            s.dx -= nf * sn * odd;
            s.dy += nf * cn * even;
            s.dxx -= nf * nf * sn * even;
            s.conj += cn * odd;
        }
        s
    }

    /// Samples every grid point in row-major order.
    pub fn sample_grid(&self, grid: &StripGrid) -> Vec<HarmonicSample> {
        let xs = grid.xs();
        let mut out = Vec::with_capacity(grid.len());
        for j in 0..grid.ny {
            let y = grid.y(j);
            out.extend(xs.iter().map(|&x| self.eval(x, y)));
        }
        out
    }
}

/// Values of the harmonic function on `R_d` with top values `boundary` and
/// zero on the bed, on a grid with the collocation points in `x`.
pub fn harmonic_extension(boundary: &PeriodicFunction, d: StripDepth, grid_ny: usize) -> Result<ExtensionField> {
    if boundary.values().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("boundary values".into()));
    }
    let grid = StripGrid::new(2 * boundary.n_modes(), grid_ny, d)?;
    let series = HarmonicSeries::new(boundary, d);
    let mut values: Vec<f64> = series.sample_grid(&grid).into_iter().map(|s| s.value).collect();
    // The grid rows at the boundaries take the data exactly.
    let top = grid.ny - 1;
    values[top * grid.nx..].copy_from_slice(boundary.values());
    values[..grid.nx].iter_mut().for_each(|v| *v = 0.0);
    Ok(ExtensionField { grid, values })
}

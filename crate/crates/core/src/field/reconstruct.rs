use serde::{Deserialize, Serialize};

use super::series::{HarmonicSample, HarmonicSeries, StripGrid};
use super::surface::check_geometry;
use crate::error::{Error, Result};
use crate::wave::{PhysicalParams, WaveState};

/// Conformal-map factors below this are treated as degenerate.
const MIN_CONFORMAL_FACTOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    /// Collocation points in `x`, 64 rows in `y`.
    pub fn for_modes(n_modes: usize) -> Self {
        Self { nx: 2 * n_modes, ny: 64 }
    }
}

/// Conformal map, stream function and velocity on the strip `R_{kh}`.
///
/// Arrays are row-major with row `0` on the bed and row `ny-1` on the surface.
#[derive(Debug, Clone)]
pub struct StripField {
    pub params: PhysicalParams,
    pub grid: StripGrid,
    pub a_offset: f64,
    pub lambda: f64,
    pub m: f64,
    pub q: f64,
    /// Physical coordinates `X = U`, `Y = V` of every grid point.
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub zeta: Vec<f64>,
    pub psi: Vec<f64>,
    /// `(ψ_Y, -ψ_X)` in the physical frame.
    pub velocity: (Vec<f64>, Vec<f64>),
    map: HarmonicSeries,
    zeta_series: Option<HarmonicSeries>,
    map_samples: Vec<HarmonicSample>,
    zeta_samples: Vec<HarmonicSample>,
}

/// Everything needed to evaluate the flow at one conformal point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSample {
    pub x_phys: f64,
    pub y_phys: f64,
    pub psi: f64,
    pub velocity: (f64, f64),
}

impl StripField {
    /// Whether [`stream_function`] has filled `zeta`, `psi` and `velocity`.
    pub fn has_flow(&self) -> bool {
        self.zeta_series.is_some()
    }

    pub fn is_flat(&self) -> bool {
        self.map.is_flat()
    }

    pub fn surface_row(&self) -> usize {
        self.grid.ny - 1
    }

    /// Evaluates the map and, if available, the flow at conformal `(x, y)`.
    pub fn sample(&self, x: f64, y: f64) -> PointSample {
        let vs = self.map.eval(x, y);
        let x_phys = self.a_offset + vs.conj;
        match &self.zeta_series {
            None => PointSample { x_phys, y_phys: vs.value, psi: f64::NAN, velocity: (f64::NAN, f64::NAN) },
            Some(z) => {
                let zs = z.eval(x, y);
                let (psi, velocity) = flow_at(&vs, &zs, self.params.gamma, self.m);
                PointSample { x_phys, y_phys: vs.value, psi, velocity }
            }
        }
    }

    /// Velocity at conformal `(x, y)`.
    pub fn velocity_at(&self, x: f64, y: f64) -> (f64, f64) {
        self.sample(x, y).velocity
    }

    fn require_flow(&self) -> Result<&HarmonicSeries> {
        self.zeta_series.as_ref().ok_or_else(|| Error::Domain("stream function not computed".into()))
    }

    /// Max `|ψ|` on the surface row and `|ψ + m|` on the bed row.
    pub fn boundary_errors(&self) -> Result<(f64, f64)> {
        self.require_flow()?;
        let nx = self.grid.nx;
        let top = self.surface_row();
        let surface = self.psi[top * nx..].iter().map(|p| p.abs()).fold(0.0, f64::max);
        let bed = self.psi[..nx].iter().map(|p| (p + self.m).abs()).fold(0.0, f64::max);
        Ok((surface, bed))
    }

    /// Max of `| |∇ψ|² + 2gY - Q |` on the surface row.
    pub fn bernoulli_residual(&self) -> Result<f64> {
        self.require_flow()?;
        let nx = self.grid.nx;
        let top = self.surface_row();
        let g = self.params.g;
        Ok((0..nx)
            .map(|i| {
                let k = top * nx + i;
                let (ux, uy) = (self.velocity.0[k], self.velocity.1[k]);
                (ux * ux + uy * uy + 2.0 * g * self.v[k] - self.q).abs()
            })
            .fold(0.0, f64::max))
    }

    /// Max over interior rows of `|Δψ + γ|`, with `ξ_xx` exact and `ξ_yy`
    /// by fourth-order centred differences (rows two or more away from the
    /// boundaries).
    pub fn laplacian_defect(&self) -> Result<f64> {
        self.require_flow()?;
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        let dy2 = self.grid.dy().powi(2);
        let gamma = self.params.gamma;
        let mut worst: f64 = 0.0;
        for j in 2..ny.saturating_sub(2) {
            for i in 0..nx {
                let k = j * nx + i;
                let (vs, zs) = (&self.map_samples[k], &self.zeta_samples[k]);
                let xi_xx = zs.dxx - gamma * (vs.dx * vs.dx + vs.value * vs.dxx);
                let xi_yy = second_difference(&self.psi, k, nx) / dy2;
                let factor = vs.dx * vs.dx + vs.dy * vs.dy;
                worst = worst.max(((xi_xx + xi_yy) / factor + gamma).abs());
            }
        }
        Ok(worst)
    }

    /// Max interior `|U_x - V_y|` and `|U_y + V_x|`, with `y`-derivatives by
    /// fourth-order centred differences.
    pub fn cauchy_riemann_defect(&self) -> (f64, f64) {
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        let dy = self.grid.dy();
        let (mut first, mut second): (f64, f64) = (0.0, 0.0);
        for j in 2..ny.saturating_sub(2) {
            for i in 0..nx {
                let k = j * nx + i;
                let s = &self.map_samples[k];
                let v_y = first_difference(&self.v, k, nx) / dy;
                let u_y = first_difference(&self.u, k, nx) / dy;
                // U_x equals the series derivative of the conjugate, i.e. V_y exactly.
                first = first.max((s.dy - v_y).abs());
                second = second.max((u_y + s.dx).abs());
            }
        }
        (first, second)
    }

    /// Max of `|U(x + 2π, y) - U(x, y) - 2π/k|` over the grid.
    pub fn periodicity_defect(&self) -> f64 {
        let period = 2.0 * std::f64::consts::PI;
        let shift = period / self.params.k;
        let mut worst: f64 = 0.0;
        for j in 0..self.grid.ny {
            let y = self.grid.y(j);
            for i in 0..self.grid.nx {
                let x = self.grid.x(i);
                let jump = self.map.eval(x + period, y).conj - self.map.eval(x, y).conj;
                worst = worst.max((jump - shift).abs());
            }
        }
        worst
    }
}

/// `ψ` and `(ψ_Y, -ψ_X)` from samples of `V` and `ζ`.
fn flow_at(vs: &HarmonicSample, zs: &HarmonicSample, gamma: f64, m: f64) -> (f64, (f64, f64)) {
    let factor = vs.dx * vs.dx + vs.dy * vs.dy;
    let psi = zs.value - m - 0.5 * gamma * vs.value * vs.value;
    let ux = (vs.dx * zs.dx + vs.dy * zs.dy) / factor - gamma * vs.value;
    let uy = (vs.dx * zs.dy - vs.dy * zs.dx) / factor;
    (psi, (ux, uy))
}

/// Fourth-order centred first difference along a column, times `h`.
fn first_difference(f: &[f64], k: usize, stride: usize) -> f64 {
    (8.0 * (f[k + stride] - f[k - stride]) - (f[k + 2 * stride] - f[k - 2 * stride])) / 12.0
}

/// Fourth-order centred second difference, times `h²`.
fn second_difference(f: &[f64], k: usize, stride: usize) -> f64 {
    (-(f[k + 2 * stride] + f[k - 2 * stride]) + 16.0 * (f[k + stride] + f[k - stride]) - 30.0 * f[k]) / 12.0
}

/// Builds `U + iV` on the strip: `V` extends `v` harmonically with
/// `V = 0` on the bed, and `U = a + x/k + Σ C_n(y)(a_n sin nx - b_n cos nx)`.
pub fn conformal_map(state: &WaveState, a_offset: f64, grid: GridSpec) -> Result<StripField> {
    check_geometry(state)?;
    let p = state.params;
    let depth = p.strip_depth();
    let strip = StripGrid::new(grid.nx, grid.ny, depth)?;
    let v = state.surface();
    let map = HarmonicSeries::new(&v, depth);
    let map_samples = map.sample_grid(&strip);
    let u: Vec<f64> = map_samples.iter().map(|s| a_offset + s.conj).collect();
    let mut vv: Vec<f64> = map_samples.iter().map(|s| s.value).collect();
    vv[..strip.nx].iter_mut().for_each(|x| *x = 0.0);
    if strip.nx == 2 * state.n_modes() {
        let top = strip.ny - 1;
        vv[top * strip.nx..].copy_from_slice(v.values());
    }
    if u.iter().chain(&vv).any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("conformal map".into()));
    }
    Ok(StripField {
        params: p,
        grid: strip,
        a_offset,
        lambda: state.lambda,
        m: state.m(),
        q: state.q(),
        u,
        v: vv,
        zeta: Vec::new(),
        psi: Vec::new(),
        velocity: (Vec::new(), Vec::new()),
        map,
        zeta_series: None,
        map_samples,
        zeta_samples: Vec::new(),
    })
}

/// Fills `ζ`, `ψ = ζ - m - γV²/2` and the velocity. `ζ` is the harmonic
/// extension of `m + γv²/2` with `v²` represented exactly on `2N` modes.
pub fn stream_function(state: &WaveState, field: StripField) -> Result<StripField> {
    let mut field = field;
    let p = &state.params;
    let v = state.surface();
    let v_wide = v.resample(2 * v.n_modes());
    let top_data = v_wide.square().scale(0.5 * p.gamma).add_constant(field.m);
    let series = HarmonicSeries::new(&top_data, p.strip_depth());
    let samples = series.sample_grid(&field.grid);
    let n = field.grid.len();
    let (mut zeta, mut psi) = (Vec::with_capacity(n), Vec::with_capacity(n));
    let (mut vel_x, mut vel_y) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for (k, (vs, zs)) in field.map_samples.iter().zip(&samples).enumerate() {
        let factor = vs.dx * vs.dx + vs.dy * vs.dy;
        if !(factor >= MIN_CONFORMAL_FACTOR) {
            return Err(Error::SingularMap { i: k % field.grid.nx, j: k / field.grid.nx, factor });
        }
        let (ps, vel) = flow_at(vs, zs, p.gamma, field.m);
        zeta.push(zs.value);
        psi.push(ps);
        vel_x.push(vel.0);
        vel_y.push(vel.1);
    }
    let nx = field.grid.nx;
    let top = field.grid.ny - 1;
    // Exact boundary rows: ζ = 0 and V = 0 on the bed; on the surface ζ takes
    // its data, so ψ vanishes up to rounding.
    for i in 0..nx {
        zeta[i] = 0.0;
        psi[i] = -field.m;
        let kt = top * nx + i;
        let vt = field.v[kt];
        zeta[kt] = field.m + 0.5 * p.gamma * vt * vt;
        psi[kt] = zeta[kt] - field.m - 0.5 * p.gamma * vt * vt;
    }
    if psi.iter().chain(&vel_x).chain(&vel_y).any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("stream function".into()));
    }
    field.zeta = zeta;
    field.psi = psi;
    field.velocity = (vel_x, vel_y);
    field.zeta_series = Some(series);
    field.zeta_samples = samples;
    Ok(field)
}

/// [`conformal_map`] followed by [`stream_function`].
pub fn reconstruct(state: &WaveState, a_offset: f64, grid: GridSpec) -> Result<StripField> {
    stream_function(state, conformal_map(state, a_offset, grid)?)
}

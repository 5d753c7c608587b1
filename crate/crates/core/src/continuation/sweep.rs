use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::branch::{trace_branch, Branch, BranchStart};
use super::newton::SolverConfig;
use crate::error::{Error, Result};
use crate::wave::{bifurcating_flux, bisect, stagnation_criterion, PhysicalParams, Side};

/// A family of parameter sets differing only in depth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub gamma: f64,
    pub g: f64,
    pub k: f64,
    pub h_values: Vec<f64>,
    /// Branch points traced per cell and side; `0` records fluxes only.
    pub branch_points: usize,
    pub mode: usize,
}

impl SweepSpec {
    /// `count` depths evenly spaced on `(h_min, h_max]`, excluding `h_min`.
    pub fn uniform(gamma: f64, g: f64, k: f64, h_min: f64, h_max: f64, count: usize) -> Result<Self> {
        if !(h_min >= 0.0 && h_max > h_min && count >= 2) {
            return Err(Error::Config(format!("bad depth range ({h_min}, {h_max}] with {count} samples")));
        }
        let step = (h_max - h_min) / count as f64;
        let h_values = (1..=count).map(|i| h_min + step * i as f64).collect();
        Ok(Self { gamma, g, k, h_values, branch_points: 0, mode: 1 })
    }

    pub fn params(&self, h: f64) -> Result<PhysicalParams> {
        PhysicalParams::new(self.gamma, self.g, self.k, h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub h: f64,
    pub m_plus: f64,
    pub m_minus: f64,
    pub stp_holds: bool,
    /// `|m± - γh²/2| / (γh²/2)`, the distance to the parabola relative to its height.
    pub gap_plus: f64,
    pub gap_minus: f64,
    /// Whether `(h_prev, h]` contains the zero of `m₋`.
    pub h_star_bracket: bool,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub cells: Vec<SweepCell>,
    /// Depth where `m₋` vanishes.
    pub h_flux_zero: Option<f64>,
    /// Depth where the stagnation criterion turns into an equality.
    pub h_stagnation: Option<f64>,
    pub branches: Vec<(f64, Side, Branch)>,
}

impl SweepResult {
    /// Number of sign changes of `m₋` along the grid.
    pub fn minus_sign_changes(&self) -> usize {
        self.cells.windows(2).filter(|w| (w[0].m_minus > 0.0) != (w[1].m_minus > 0.0)).count()
    }
}

fn relative_gap(m: f64, p: &PhysicalParams) -> f64 {
    let parabola = 0.5 * p.gamma * p.h * p.h;
    ((m - parabola) / parabola).abs()
}

/// Records `m±(h)` on the grid, bisects the distinguished depths and
/// optionally traces both branches per cell. Cells run in parallel on the
/// current rayon pool; results are ordered as `h_values`.
pub fn sweep_surface(spec: &SweepSpec, config: &SolverConfig) -> Result<SweepResult> {
    if spec.h_values.is_empty() {
        return Err(Error::Config("empty depth grid".into()));
    }
    if spec.h_values.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Config("depth grid must be strictly increasing".into()));
    }
    let params: Vec<PhysicalParams> = spec.h_values.iter().map(|&h| spec.params(h)).collect::<Result<_>>()?;

    let mut cells: Vec<SweepCell> = params
        .par_iter()
        .map(|p| {
            let (m_plus, m_minus) = bifurcating_flux(p);
            SweepCell {
                h: p.h,
                m_plus,
                m_minus,
                stp_holds: stagnation_criterion(p).holds,
                gap_plus: relative_gap(m_plus, p),
                gap_minus: relative_gap(m_minus, p),
                h_star_bracket: false,
            }
        })
        .collect();

    let m_minus_at = |h: f64| spec.params(h).map(|p| bifurcating_flux(&p).1).unwrap_or(f64::NAN);
    let mut h_flux_zero = None;
    for i in 1..cells.len() {
        if (cells[i - 1].m_minus > 0.0) != (cells[i].m_minus > 0.0) {
            cells[i].h_star_bracket = true;
            if h_flux_zero.is_none() {
                h_flux_zero = Some(bisect(cells[i - 1].h, cells[i].h, m_minus_at));
            }
        }
    }

    let h_stagnation = if spec.gamma == 0.0 {
        None
    } else {
        let gap = |h: f64| {
            spec.params(h)
                .map(|p| {
                    let c = stagnation_criterion(&p);
                    c.lhs - c.rhs
                })
                .unwrap_or(f64::NAN)
        };
        // lhs - rhs decreases in h from 1 towards -1.
        let mut hi = spec.h_values[0];
        while gap(hi) > 0.0 && hi < 1e8 {
            hi *= 2.0;
        }
        let mut lo = hi;
        while gap(lo) <= 0.0 && lo > 1e-12 {
            lo *= 0.5;
        }
        (gap(lo) > 0.0 && gap(hi) <= 0.0).then(|| bisect(lo, hi, gap))
    };

    let branches = if spec.branch_points == 0 {
        Vec::new()
    } else {
        let jobs: Vec<(PhysicalParams, Side)> =
            params.iter().flat_map(|p| [(*p, Side::Plus), (*p, Side::Minus)]).collect();
        jobs.par_iter()
            .map(|(p, side)| {
                let start = BranchStart::from_dispersion(p, spec.mode, *side);
                trace_branch(p, start, spec.branch_points, config).map(|b| (p.h, *side, b))
            })
            .collect::<Result<Vec<_>>>()?
    };

    Ok(SweepResult { spec: spec.clone(), cells, h_flux_zero, h_stagnation, branches })
}

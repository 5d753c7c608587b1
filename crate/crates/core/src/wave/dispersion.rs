//! Dispersion relation, bifurcating fluxes, laminar flows and the
//! stagnation criteria for the laminar flows that trigger wave bifurcation.

use serde::{Deserialize, Serialize};

use super::params::PhysicalParams;
use crate::error::{Error, Result};

/// Which root of the dispersion relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        }
    }

    pub fn pick(self, roots: (f64, f64)) -> f64 {
        match self {
            Side::Plus => roots.0,
            Side::Minus => roots.1,
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Side::Plus),
            "minus" | "-" => Ok(Side::Minus),
            other => Err(Error::Config(format!("side must be `plus` or `minus`, got `{other}`"))),
        }
    }
}

/// `tanh(nkh)/(nk)`.
fn depth_factor(n: usize, p: &PhysicalParams) -> f64 {
    let nk = n as f64 * p.k;
    (nk * p.h).tanh() / nk
}

/// Roots `(λ₊, λ₋)` of `λ² n k coth(nkh) = g - λγ`.
pub fn dispersion_lambdas(n: usize, p: &PhysicalParams) -> (f64, f64) {
    assert!(n >= 1, "mode must be positive");
    let t = depth_factor(n, p);
    let half = 0.5 * p.gamma * t;
    let disc = (half * half + p.g * t).sqrt();
    // The root without cancellation first; the other from λ₊λ₋ = -g t.
    if p.gamma >= 0.0 {
        let minus = -half - disc;
        (-p.g * t / minus, minus)
    } else {
        let plus = -half + disc;
        (plus, -p.g * t / plus)
    }
}

/// `λ² n k coth(nkh) - (g - λγ)`.
pub fn dispersion_residual(lambda: f64, n: usize, p: &PhysicalParams) -> f64 {
    let nk = n as f64 * p.k;
    let coth = p.strip_depth().coth(n);
    lambda * lambda * nk * coth - (p.g - lambda * p.gamma)
}

/// Transversality scalar `-γ - 2λ* n k coth(nkh)`.
pub fn transversality(lambda_star: f64, n: usize, p: &PhysicalParams) -> f64 {
    -p.gamma - 2.0 * lambda_star * n as f64 * p.k * p.strip_depth().coth(n)
}

/// Fluxes `(m₊, m₋)` of the laminar flows at which mode-1 waves bifurcate.
pub fn bifurcating_flux(p: &PhysicalParams) -> (f64, f64) {
    let t = (p.k * p.h).tanh();
    let base = 0.5 * p.gamma * p.h * p.h - 0.5 * p.gamma * p.h * t / p.k;
    let root = p.h * ((p.gamma * t / (2.0 * p.k)).powi(2) + p.g * t / p.k).sqrt();
    (base + root, base - root)
}

/// A laminar flow with flat surface `Y = h` and horizontal velocity `λ + γ(h - Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaminarFlow {
    pub params: PhysicalParams,
    pub lambda: f64,
    pub m: f64,
    pub q: f64,
    pub stagnation_y: Option<f64>,
}

impl LaminarFlow {
    /// Horizontal velocity at height `y`.
    pub fn velocity(&self, y: f64) -> f64 {
        self.lambda + self.params.gamma * (self.params.h - y)
    }

    /// `ψ(Y) = -(γ/2)Y² + (m/h + γh/2)Y - m`.
    pub fn stream_function(&self, y: f64) -> f64 {
        let p = &self.params;
        -0.5 * p.gamma * y * y + (self.m / p.h + 0.5 * p.gamma * p.h) * y - self.m
    }
}

pub fn laminar_flow(lambda: f64, p: &PhysicalParams) -> LaminarFlow {
    let m = p.flux_from_lambda(lambda);
    let q = 2.0 * p.g * p.h + lambda * lambda;
    let stagnation_y = if p.gamma != 0.0 {
        let y0 = p.h + lambda / p.gamma;
        (0.0..=p.h).contains(&y0).then_some(y0)
    } else {
        None
    };
    LaminarFlow { params: *p, lambda, m, q, stagnation_y }
}

/// Height of the stagnation line of the bifurcating laminar flow, from the
/// closed-form distance below the surface; `None` when the criterion fails.
pub fn stagnation_line_height(p: &PhysicalParams) -> Option<f64> {
    if p.gamma == 0.0 || !stagnation_criterion(p).holds {
        return None;
    }
    let t = (p.k * p.h).tanh() / p.k;
    let gap = 0.5 * t + (0.25 * t * t + p.g / (p.gamma * p.gamma) * t).sqrt();
    Some(p.h - gap)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StagnationCriterion {
    pub holds: bool,
    /// `tanh(kh)/(kh)`.
    pub lhs: f64,
    /// `γ²h/(g + γ²h)`.
    pub rhs: f64,
    /// Wavenumber at which equality holds for the current `h, γ`.
    pub critical_k: Option<f64>,
    /// Vorticity (same sign as `γ`) at which equality holds for the current `h, k`.
    pub critical_gamma: Option<f64>,
    /// The dispersion root whose laminar flow carries the stagnation line.
    pub side: Option<Side>,
}

fn tanh_ratio(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 3.0
    } else {
        x.tanh() / x
    }
}

fn vorticity_ratio(gamma: f64, p: &PhysicalParams) -> f64 {
    let s = gamma * gamma * p.h;
    s / (p.g + s)
}

/// Bisection for a sign change of `f` on `[lo, hi]`, to machine resolution.
pub(crate) fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let (fl, fh) = (f(lo).abs(), f(hi).abs());
    if fl <= fh {
        lo
    } else {
        hi
    }
}

/// Expands `[lo, hi]` geometrically until `f` changes sign, assuming `f(lo) > 0 > f(hi)`
/// eventually for a decreasing `f` on `(0, ∞)`.
fn positive_root_decreasing(start: f64, f: impl Fn(f64) -> f64) -> Option<f64> {
    let (mut lo, mut hi) = (start, start);
    for _ in 0..2000 {
        if f(lo) > 0.0 {
            break;
        }
        lo *= 0.5;
    }
    for _ in 0..2000 {
        if f(hi) < 0.0 {
            break;
        }
        hi *= 2.0;
    }
    if !(f(lo) > 0.0 && f(hi) < 0.0) {
        return None;
    }
    Some(bisect(lo, hi, f))
}

pub fn stagnation_criterion(p: &PhysicalParams) -> StagnationCriterion {
    let lhs = tanh_ratio(p.k * p.h);
    let rhs = vorticity_ratio(p.gamma, p);
    let holds = p.gamma != 0.0 && lhs <= rhs;
    let (critical_k, critical_gamma) = if p.gamma == 0.0 {
        (None, None)
    } else {
        let k_star = positive_root_decreasing(p.k, |k| tanh_ratio(k * p.h) - rhs);
        let g_mag = positive_root_decreasing(p.gamma.abs(), |g| lhs - vorticity_ratio(g, p));
        (k_star, g_mag.map(|g| g.copysign(p.gamma)))
    };
    let side = holds.then_some(if p.gamma > 0.0 { Side::Minus } else { Side::Plus });
    StagnationCriterion { holds, lhs, rhs, critical_k, critical_gamma, side }
}

/// Comparison of the flux condition for `k = 1`, `γ > 0`, `m < 0` with a
/// direct search for the depth at which the bifurcating flux equals `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxConditionReport {
    pub condition_holds: bool,
    /// `tanh(√(-2m/γ))`.
    pub lhs: f64,
    /// `-2mγ/(g + γ√(-2mγ))`.
    pub rhs: f64,
    pub lambda_root: Option<f64>,
    pub h_root: Option<f64>,
}

impl FluxConditionReport {
    /// Whether the closed-form condition and the root search agree.
    pub fn agrees(&self) -> bool {
        self.condition_holds == self.lambda_root.is_some()
    }
}

/// Depth `h(λ) = -λ/γ - √(λ² + 2γm)/γ`.
pub fn depth_for_speed(lambda: f64, gamma: f64, m: f64) -> f64 {
    (-lambda - (lambda * lambda + 2.0 * gamma * m).sqrt()) / gamma
}

pub fn flux_condition_cs(m: f64, p: &PhysicalParams) -> Result<FluxConditionReport> {
    let (gamma, g) = (p.gamma, p.g);
    if !(gamma > 0.0) || !(m < 0.0) {
        return Err(Error::Domain(format!("flux condition needs gamma > 0 and m < 0, got gamma = {gamma}, m = {m}")));
    }
    if p.k != 1.0 {
        return Err(Error::Domain(format!("flux condition is stated for k = 1, got k = {}", p.k)));
    }
    let lhs = (-2.0 * m / gamma).sqrt().tanh();
    let rhs = -2.0 * m * gamma / (g + gamma * (-2.0 * m * gamma).sqrt());
    let condition_holds = lhs > rhs;

    let edge = -(-2.0 * gamma * m).sqrt();
    let f = |lambda: f64| depth_for_speed(lambda, gamma, m).tanh() - lambda * lambda / (g - gamma * lambda);
    let right = edge - 1e-12;
    let mut span = 10.0 * (1.0 + g / gamma);
    let mut bracket = None;
    // Scan offsets below the edge on a log grid; widen until a sign change appears.
    'search: for _ in 0..60 {
        let samples = 400;
        let mut prev = (right, f(right));
        for i in 1..=samples {
            let offset = 1e-12 * (span / 1e-12).powf(i as f64 / samples as f64);
            let lambda = edge - offset;
            let val = f(lambda);
            if (val > 0.0) != (prev.1 > 0.0) {
                bracket = Some((lambda, prev.0));
                break 'search;
            }
            prev = (lambda, val);
        }
        span *= 2.0;
    }
    let lambda_root = bracket.map(|(lo, hi)| bisect(lo, hi, f));
    let h_root = lambda_root.map(|l| depth_for_speed(l, gamma, m));
    Ok(FluxConditionReport { condition_holds, lhs, rhs, lambda_root, h_root })
}

use serde::{Deserialize, Serialize};

use super::reconstruct::StripField;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StagnationKind {
    Center,
    Saddle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StagnationPoint {
    /// Physical position.
    pub x: f64,
    pub y: f64,
    /// Conformal position.
    pub x_conformal: f64,
    pub y_conformal: f64,
    pub kind: StagnationKind,
    pub speed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StagnationReport {
    pub points: Vec<StagnationPoint>,
    pub has_critical_layer: bool,
    /// Height of the stagnation line of a laminar flow.
    pub laminar_line_y: Option<f64>,
    /// Max grid speed; the zero threshold is `1e-9` times this.
    pub velocity_scale: f64,
}

/// Relative speed below which a Newton iterate counts as a stagnation point.
const ZERO_FRACTION: f64 = 1e-9;

fn sign_change(a: f64, b: f64) -> bool {
    (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)
}

/// Newton on the velocity with a centred finite-difference Jacobian.
fn newton_2d(field: &StripField, mut x: f64, mut y: f64, threshold: f64) -> Option<(f64, f64, f64)> {
    let depth = field.grid.depth;
    let h = 1e-7;
    for _ in 0..60 {
        let (f0, f1) = field.velocity_at(x, y);
        let size = f0.hypot(f1);
        if size <= 1e-3 * threshold {
            return Some((x, y, size));
        }
        let (ax, ay) = field.velocity_at(x + h, y);
        let (bx, by) = field.velocity_at(x - h, y);
        let (cx, cy) = field.velocity_at(x, y + h);
        let (dx, dy) = field.velocity_at(x, y - h);
        let j = [[(ax - bx) / (2.0 * h), (cx - dx) / (2.0 * h)], [(ay - by) / (2.0 * h), (cy - dy) / (2.0 * h)]];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let sx = (j[1][1] * f0 - j[0][1] * f1) / det;
        let sy = (-j[1][0] * f0 + j[0][0] * f1) / det;
        x -= sx;
        y -= sy;
        if !(y >= -depth - 1e-9 && y <= 1e-9) || !x.is_finite() {
            return None;
        }
        if sx.hypot(sy) < 1e-15 {
            let (g0, g1) = field.velocity_at(x, y);
            let size = g0.hypot(g1);
            return (size <= threshold).then_some((x, y, size));
        }
    }
    None
}

fn jacobian_det(field: &StripField, x: f64, y: f64) -> f64 {
    let h = 1e-6;
    let (ax, ay) = field.velocity_at(x + h, y);
    let (bx, by) = field.velocity_at(x - h, y);
    let (cx, cy) = field.velocity_at(x, y + h);
    let (dx, dy) = field.velocity_at(x, y - h);
    ((ax - bx) * (cy - dy) - (cx - dx) * (ay - by)) / (4.0 * h * h)
}

/// Height where the horizontal velocity of a laminar flow vanishes, found by
/// bisection along the first grid column.
fn laminar_line(field: &StripField) -> Option<f64> {
    let nx = field.grid.nx;
    let column: Vec<f64> = (0..field.grid.ny).map(|j| field.velocity.0[j * nx]).collect();
    let j = column.windows(2).position(|w| sign_change(w[0], w[1]) || w[1] == 0.0)?;
    let (mut lo, mut hi) = (field.grid.y(j), field.grid.y(j + 1));
    let f = |y: f64| field.velocity_at(0.0, y).0;
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(field.sample(0.0, 0.5 * (lo + hi)).y_phys)
}

/// Stagnation points, critical layers and laminar stagnation lines.
pub fn find_stagnation(field: &StripField) -> Result<StagnationReport> {
    if !field.has_flow() {
        return Err(Error::Domain("stream function not computed".into()));
    }
    let (nx, ny) = (field.grid.nx, field.grid.ny);
    let (vx, vy) = (&field.velocity.0, &field.velocity.1);
    let scale = vx.iter().zip(vy).map(|(a, b)| a.hypot(*b)).fold(0.0, f64::max);
    let threshold = ZERO_FRACTION * scale;

    let has_critical_layer =
        (0..nx).any(|i| (0..ny - 1).any(|j| sign_change(vx[j * nx + i], vx[(j + 1) * nx + i])));

    if field.is_flat() {
        let laminar_line_y = laminar_line(field);
        return Ok(StagnationReport { points: Vec::new(), has_critical_layer, laminar_line_y, velocity_scale: scale });
    }

    let mut points: Vec<StagnationPoint> = Vec::new();
    let (dx, dy) = (field.grid.dx(), field.grid.dy());
    let two_pi = 2.0 * std::f64::consts::PI;
    for j in 0..ny - 1 {
        for i in 0..nx {
            let ip = (i + 1) % nx;
            let corners = [j * nx + i, j * nx + ip, (j + 1) * nx + i, (j + 1) * nx + ip];
            let straddles = |f: &Vec<f64>| {
                let lo = corners.iter().map(|&k| f[k]).fold(f64::INFINITY, f64::min);
                let hi = corners.iter().map(|&k| f[k]).fold(f64::NEG_INFINITY, f64::max);
                lo <= 0.0 && hi >= 0.0
            };
            if !(straddles(vx) && straddles(vy)) {
                continue;
            }
            let seed = (field.grid.x(i) + 0.5 * dx, field.grid.y(j) + 0.5 * dy);
            let Some((x, y, speed)) = newton_2d(field, seed.0, seed.1, threshold) else {
                log::debug!("stagnation seed at ({}, {}) dropped", seed.0, seed.1);
                continue;
            };
            let x = x.rem_euclid(two_pi);
            let duplicate = points.iter().any(|p| {
                let ddx = (p.x_conformal - x).abs();
                ddx.min(two_pi - ddx) <= dx && (p.y_conformal - y).abs() <= dy
            });
            if duplicate {
                continue;
            }
            let kind = if jacobian_det(field, x, y) > 0.0 { StagnationKind::Center } else { StagnationKind::Saddle };
            let s = field.sample(x, y);
            points.push(StagnationPoint { x: s.x_phys, y: s.y_phys, x_conformal: x, y_conformal: y, kind, speed });
        }
    }
    points.sort_by(|a, b| a.x_conformal.total_cmp(&b.x_conformal));
    Ok(StagnationReport { points, has_critical_layer, laminar_line_y: None, velocity_scale: scale })
}

use serde::{Deserialize, Serialize};

use crate::error::{Condition, Error, Result};
use crate::operators::{commutator_q, dirichlet_neumann, hilbert_strip, hilbert_strip_inverse, StripDepth};
use crate::spectral::PeriodicFunction;
use crate::wave::WaveState;

/// Per-state surface checks: `w > -h`, `1/k + C(w') > 0` and injectivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validity {
    pub os: bool,
    pub gra: bool,
    pub injective: bool,
}

impl Validity {
    pub fn all(&self) -> bool {
        self.os && self.gra && self.injective
    }
}

/// `u' = 1/k + C_{kh}(w')`, the derivative of the horizontal surface coordinate.
fn horizontal_speed(state: &WaveState) -> PeriodicFunction {
    let p = &state.params;
    hilbert_strip(&state.w().differentiate(), p.strip_depth())
        .expect("derivative has zero mean")
        .add_constant(1.0 / p.k)
}

/// `x/k + C_{kh}(w)` at the collocation points.
fn horizontal_positions(state: &WaveState, a_offset: f64) -> Vec<f64> {
    let p = &state.params;
    let cw = hilbert_strip(state.w(), p.strip_depth()).expect("profile has zero mean");
    let n = state.n_modes();
    cw.values()
        .iter()
        .enumerate()
        .map(|(j, c)| a_offset + crate::spectral::grid_point(n, j) / p.k + c)
        .collect()
}

pub fn validity_flags(state: &WaveState) -> Validity {
    let os = state.surface().min_value() > 0.0;
    let gra = horizontal_speed(state).min_value() > 0.0;
    let injective = if gra {
        true
    } else {
        find_self_intersection(&horizontal_positions(state, 0.0), state.surface().values(), state.params.wavelength())
            .is_none()
    };
    Validity { os, gra, injective }
}

fn segments_cross(p1: (f64, f64), p2: (f64, f64), q1: (f64, f64), q2: (f64, f64)) -> bool {
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Proper crossings between the closed-period polyline and itself or its
/// translates by `±period`; returns the `X` coordinate of the first one.
pub fn find_self_intersection(xs: &[f64], ys: &[f64], period: f64) -> Option<f64> {
    let n = xs.len();
    let pt = |k: usize, shift: f64| {
        let wrap = (k / n) as f64 * period;
        (xs[k % n] + wrap + shift, ys[k % n])
    };
    for i in 0..n {
        let (a1, a2) = (pt(i, 0.0), pt(i + 1, 0.0));
        for shift in [-period, 0.0, period] {
            for j in 0..n {
                if shift == 0.0 && (j == i || j + 1 == i || i + 1 == j || (i == 0 && j == n - 1) || (j == 0 && i == n - 1)) {
                    continue;
                }
                let (b1, b2) = (pt(j, shift), pt(j + 1, shift));
                if segments_cross(a1, a2, b1, b2) {
                    return Some(0.5 * (a1.0 + a2.0));
                }
            }
        }
    }
    None
}

/// Physical surface sampled at the collocation points.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceCurve {
    /// `(X, Y) = (a + x/k + C_{kh}(v - h), v)`.
    pub points: Vec<(f64, f64)>,
    pub theta0: PeriodicFunction,
    pub u_prime: PeriodicFunction,
    pub v_prime: PeriodicFunction,
    /// `(u'² + v'²)^{1/2}`.
    pub speed: PeriodicFunction,
    pub injective: bool,
    /// Max deviation in `u' = S cos θ₀`, `v' = S sin θ₀`.
    pub compatibility_error: f64,
}

/// `G_{kh}(v²/2) - v G_{kh}(v)` computed directly and through the commutator form
/// `[v²]/(2kh) - v/k - Q_{kh}(v)`.
pub fn flux_term_forms(v: &PeriodicFunction, k: f64, h: f64) -> (PeriodicFunction, PeriodicFunction) {
    let d = StripDepth::new(k * h).expect("positive depth");
    let v2 = v.square();
    let direct = dirichlet_neumann(&v2.scale(0.5), d).sub(&v.multiply(&dirichlet_neumann(v, d)));
    let via_commutator = commutator_q(v, d).scale(-1.0).axpy(-1.0 / k, v).add_constant(v2.mean() / (2.0 * k * h));
    (direct, via_commutator)
}

/// Both sides of the surface-speed identity
/// `(u'² + v'²)^{1/2} = |m/(kh) + γ{G(v²/2) - vG(v)}| / (Q - 2gv)^{1/2}`.
pub fn surface_speed_sides(state: &WaveState) -> Result<(PeriodicFunction, PeriodicFunction)> {
    let p = &state.params;
    let v = state.surface();
    let u_prime = horizontal_speed(state);
    let v_prime = state.w().differentiate();
    let lhs = u_prime.square().add(&v_prime.square()).map_values(f64::sqrt)?;
    let head = v.scale(-2.0 * p.g).add_constant(state.q());
    check_surface_speed(&head)?;
    let (term, _) = flux_term_forms(&v, p.k, p.h);
    let numer = term.scale(p.gamma).add_constant(state.m() / (p.k * p.h));
    let rhs = PeriodicFunction::from_values(
        numer.values().iter().zip(head.values()).map(|(n, q)| n.abs() / q.sqrt()).collect(),
    )?;
    Ok((lhs, rhs))
}

fn check_surface_speed(head: &PeriodicFunction) -> Result<()> {
    let n = head.n_modes();
    if let Some((j, &value)) = head.values().iter().enumerate().find(|(_, q)| !(**q > 0.0)) {
        return Err(Error::SurfaceStagnation { x: crate::spectral::grid_point(n, j), value });
    }
    Ok(())
}

/// Rejects states violating `v > 0` or `v'² + G(v)² ≠ 0`.
pub fn check_geometry(state: &WaveState) -> Result<Validity> {
    let v = state.surface();
    if v.min_value() <= 0.0 {
        return Err(Error::Rejected {
            condition: Condition::Positive,
            detail: Some(format!("min v = {:e}", v.min_value())),
        });
    }
    let jac = horizontal_speed(state).square().add(&state.w().differentiate().square());
    if jac.min_value() <= 0.0 {
        return Err(Error::Rejected {
            condition: Condition::Regular,
            detail: Some(format!("min u'^2 + v'^2 = {:e}", jac.min_value())),
        });
    }
    let flags = validity_flags(state);
    if !flags.injective {
        return Err(Error::Rejected { condition: Condition::Injective, detail: None });
    }
    Ok(flags)
}

/// Surface curve, tangent angle and the geometric checks on a state.
pub fn surface_geometry(state: &WaveState, a_offset: f64) -> Result<SurfaceCurve> {
    let p = &state.params;
    let v = state.surface();
    if v.min_value() <= 0.0 {
        return Err(Error::Rejected {
            condition: Condition::Positive,
            detail: Some(format!("min v = {:e}", v.min_value())),
        });
    }
    let head = v.scale(-2.0 * p.g).add_constant(state.q());
    check_surface_speed(&head)?;

    let u_prime = horizontal_speed(state);
    let v_prime = state.w().differentiate();
    let speed2 = u_prime.square().add(&v_prime.square());
    if speed2.min_value() <= 0.0 {
        return Err(Error::Rejected {
            condition: Condition::Regular,
            detail: Some(format!("min u'^2 + v'^2 = {:e}", speed2.min_value())),
        });
    }
    // Pointwise, not dealiased: log|f'| must be sampled, not projected.
    let speed = PeriodicFunction::from_values(
        u_prime.values().iter().zip(v_prime.values()).map(|(a, b)| a.hypot(*b)).collect(),
    )?;
    let log_speed = speed.map_values(f64::ln)?;
    let theta0 = hilbert_strip_inverse(&log_speed.without_mean(), p.strip_depth())?;

    let compatibility_error = theta0
        .values()
        .iter()
        .zip(speed.values())
        .zip(u_prime.values().iter().zip(v_prime.values()))
        .map(|((t, s), (u, vp))| (s * t.cos() - u).abs().max((s * t.sin() - vp).abs()))
        .fold(0.0, f64::max);

    let xs = horizontal_positions(state, a_offset);
    let injective = if u_prime.min_value() > 0.0 {
        xs.windows(2).all(|w| w[1] > w[0])
    } else {
        match find_self_intersection(&xs, v.values(), p.wavelength()) {
            Some(x) => return Err(Error::SelfIntersection { x }),
            None => true,
        }
    };
    if !injective {
        let j = xs.windows(2).position(|w| w[1] <= w[0]).unwrap_or(0);
        return Err(Error::SelfIntersection { x: xs[j] });
    }
    let points = xs.into_iter().zip(v.values().iter().copied()).collect();
    Ok(SurfaceCurve { points, theta0, u_prime, v_prime, speed, injective, compatibility_error })
}

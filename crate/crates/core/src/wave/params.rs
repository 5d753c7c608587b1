use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::StripDepth;
use crate::spectral::{PeriodicFunction, SymmetryClass};

/// Vorticity `γ`, gravity `g`, wavenumber `k` and conformal mean depth `h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhysicalParams {
    pub gamma: f64,
    pub g: f64,
    pub k: f64,
    pub h: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self { gamma: 0.0, g: 1.0, k: 1.0, h: 1.0 }
    }
}

impl PhysicalParams {
    pub fn new(gamma: f64, g: f64, k: f64, h: f64) -> Result<Self> {
        let p = Self { gamma, g, k, h };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [self.gamma, self.g, self.k, self.h].iter().all(|x| x.is_finite());
        if !all_finite {
            return Err(Error::InvalidParams(format!("non-finite parameters {self:?}")));
        }
        for (name, v) in [("g", self.g), ("k", self.k), ("h", self.h)] {
            if v <= 0.0 {
                return Err(Error::InvalidParams(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Wavelength `L = 2π/k`.
    pub fn wavelength(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.k
    }

    /// Conformal strip depth `d = k h`.
    pub fn strip_depth(&self) -> StripDepth {
        StripDepth::new(self.k * self.h).expect("validated parameters")
    }

    /// `m = λh + γh²/2`.
    pub fn flux_from_lambda(&self, lambda: f64) -> f64 {
        lambda * self.h + 0.5 * self.gamma * self.h * self.h
    }

    /// `λ = m/h - γh/2`.
    pub fn lambda_from_flux(&self, m: f64) -> f64 {
        m / self.h - 0.5 * self.gamma * self.h
    }
}

/// `(m, Q) -> (λ, μ)`.
pub fn convert_mq_to_lambda_mu(m: f64, q: f64, p: &PhysicalParams) -> (f64, f64) {
    let lambda = p.lambda_from_flux(m);
    (lambda, q - 2.0 * p.g * p.h - lambda * lambda)
}

/// `(λ, μ) -> (m, Q)`.
pub fn convert_lambda_mu_to_mq(lambda: f64, mu: f64, p: &PhysicalParams) -> (f64, f64) {
    (p.flux_from_lambda(lambda), mu + 2.0 * p.g * p.h + lambda * lambda)
}

/// A point `(λ, μ, w)` with `v = w + h` the surface elevation in conformal variables.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveState {
    pub params: PhysicalParams,
    pub lambda: f64,
    pub mu: f64,
    w: PeriodicFunction,
}

impl WaveState {
    /// Validates `[w] = 0` and evenness of `w`.
    pub fn new(params: PhysicalParams, lambda: f64, mu: f64, w: PeriodicFunction) -> Result<Self> {
        params.validate()?;
        if !(lambda.is_finite() && mu.is_finite()) {
            return Err(Error::NonFinite(format!("lambda = {lambda}, mu = {mu}")));
        }
        if w.mean().abs() > 1e-12 * w.max_abs().max(1.0) {
            return Err(Error::NonZeroMean { mean: w.mean() });
        }
        if w.symmetry(1e-12) != SymmetryClass::Even {
            return Err(Error::Domain("wave profile must be even".into()));
        }
        Ok(Self { params, lambda, mu, w })
    }

    /// Flat laminar state `w = 0`, `μ = 0`.
    pub fn trivial(params: PhysicalParams, lambda: f64, n_modes: usize) -> Self {
        Self { params, lambda, mu: 0.0, w: PeriodicFunction::zero(n_modes) }
    }

    pub fn w(&self) -> &PeriodicFunction {
        &self.w
    }

    pub fn n_modes(&self) -> usize {
        self.w.n_modes()
    }

    /// `v = w + h`.
    pub fn surface(&self) -> PeriodicFunction {
        self.w.add_constant(self.params.h)
    }

    /// Relative mass flux `m`.
    pub fn m(&self) -> f64 {
        convert_lambda_mu_to_mq(self.lambda, self.mu, &self.params).0
    }

    /// Bernoulli constant `Q`.
    pub fn q(&self) -> f64 {
        convert_lambda_mu_to_mq(self.lambda, self.mu, &self.params).1
    }

    /// Amplitude parameter: the `cos(n x)` coefficient of `w`.
    pub fn amplitude(&self, mode: usize) -> f64 {
        self.w.cos_coeff(mode)
    }

    pub fn is_flat(&self) -> bool {
        self.w.cos_coeffs().iter().all(|&a| a == 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_mu_is_the_laminar_bernoulli_constant() {
        let p = PhysicalParams::new(1.3, 9.81, 0.7, 2.0).unwrap();
        let m = 0.4;
        let q = 2.0 * p.g * p.h + (m / p.h - p.gamma * p.h / 2.0).powi(2);
        let (lambda, mu) = convert_mq_to_lambda_mu(m, q, &p);
        assert!(mu.abs() < 1e-14);
        assert!((lambda - (m / p.h - p.gamma * p.h / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn irrotational_still_water() {
        let p = PhysicalParams::new(0.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(convert_mq_to_lambda_mu(0.0, 2.0, &p), (0.0, 0.0));
    }

    #[test]
    fn rejects_bad_params() {
        assert!(PhysicalParams::new(0.0, 0.0, 1.0, 1.0).is_err());
        assert!(PhysicalParams::new(0.0, 1.0, -1.0, 1.0).is_err());
        assert!(PhysicalParams::new(f64::NAN, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn state_checks() {
        let p = PhysicalParams::default();
        let n = 8;
        assert!(WaveState::new(p, 0.5, 0.0, PeriodicFunction::cosine(n, 1, 0.1)).is_ok());
        assert!(WaveState::new(p, 0.5, 0.0, PeriodicFunction::constant(n, 0.1)).is_err());
        assert!(WaveState::new(p, 0.5, 0.0, PeriodicFunction::sine(n, 1, 0.1)).is_err());
    }
}

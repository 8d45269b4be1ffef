use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::{ComplexSpectrum, FrequencyGrid, RawDataTable};
use crate::error::{invalid, Result};

/// Tolerance on the sum of CRIM volume fractions.
const FRACTION_SUM_TOL: f64 = 1e-9;

fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be finite, got {value}")))
    }
}

/// Single Debye relaxation `ε∞ + Δε / (1 + jωτ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DebyePoleParams {
    pub eps_inf: f64,
    pub delta_eps: f64,
    pub tau: f64,
}

impl DebyePoleParams {
    pub fn validate(&self) -> Result<()> {
        check_finite("eps_inf", self.eps_inf)?;
        check_finite("delta_eps", self.delta_eps)?;
        if !(self.tau.is_finite() && self.tau > 0.0) {
            return Err(invalid("tau", format!("must be positive, got {}", self.tau)));
        }
        Ok(())
    }

    fn value_at(&self, omega: f64) -> Complex64 {
        self.eps_inf + self.delta_eps / Complex64::new(1.0, omega * self.tau)
    }
}

pub fn eval_debye_pole(
    eps_inf: f64,
    delta_eps: f64,
    tau0: f64,
    grid: &FrequencyGrid,
) -> Result<ComplexSpectrum> {
    let pole = DebyePoleParams {
        eps_inf,
        delta_eps,
        tau: tau0,
    };
    pole.validate()?;
    Ok(ComplexSpectrum::from_fn(grid, |w| pole.value_at(w)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HavriliakNegamiParams {
    pub eps_inf: f64,
    /// `εs − ε∞`
    pub delta_eps: f64,
    pub tau0: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl HavriliakNegamiParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(invalid("alpha", format!("must lie in (0, 1], got {}", self.alpha)));
        }
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(invalid("beta", format!("must lie in (0, 1], got {}", self.beta)));
        }
        if !(self.tau0.is_finite() && self.tau0 > 0.0) {
            return Err(invalid("tau0", format!("must be positive, got {}", self.tau0)));
        }
        if !(self.delta_eps.is_finite() && self.delta_eps > 0.0) {
            return Err(invalid(
                "delta_eps",
                format!("must be positive, got {}", self.delta_eps),
            ));
        }
        if !(self.eps_inf.is_finite() && self.eps_inf >= 1.0) {
            return Err(invalid(
                "eps_inf",
                format!("must be at least 1, got {}", self.eps_inf),
            ));
        }
        Ok(())
    }

    pub fn eps_static(&self) -> f64 {
        self.eps_inf + self.delta_eps
    }

    fn value_at(&self, omega: f64) -> Complex64 {
        // (jωτ)^α on the principal branch: arg = απ/2
        let z = Complex64::from_polar((omega * self.tau0).powf(self.alpha), self.alpha * FRAC_PI_2);
        let base = 1.0 + z;
        let denom = Complex64::from_polar(base.norm().powf(self.beta), self.beta * base.arg());
        self.eps_inf + self.delta_eps / denom
    }
}

pub fn eval_havriliak_negami(
    params: &HavriliakNegamiParams,
    grid: &FrequencyGrid,
) -> Result<ComplexSpectrum> {
    params.validate()?;
    Ok(ComplexSpectrum::from_fn(grid, |w| params.value_at(w)))
}

/// Jonscher universal response `ε∞ + Aₚ(−jω/ωₚ)^nₚ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonscherParams {
    pub eps_inf: f64,
    pub a_p: f64,
    /// Reference angular frequency (rad/s).
    pub omega_p: f64,
    pub n_p: f64,
}

impl JonscherParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.n_p) {
            return Err(invalid("n_p", format!("must lie in [0, 1], got {}", self.n_p)));
        }
        if !(self.a_p.is_finite() && self.a_p > 0.0) {
            return Err(invalid("a_p", format!("must be positive, got {}", self.a_p)));
        }
        if !(self.omega_p.is_finite() && self.omega_p > 0.0) {
            return Err(invalid(
                "omega_p",
                format!("must be positive, got {}", self.omega_p),
            ));
        }
        if !(self.eps_inf.is_finite() && self.eps_inf >= 1.0) {
            return Err(invalid(
                "eps_inf",
                format!("must be at least 1, got {}", self.eps_inf),
            ));
        }
        Ok(())
    }

    fn value_at(&self, omega: f64) -> Complex64 {
        if self.n_p == 0.0 {
            return Complex64::new(self.eps_inf + self.a_p, 0.0);
        }
        let magnitude = self.a_p * (omega / self.omega_p).powf(self.n_p);
        self.eps_inf + Complex64::from_polar(magnitude, -self.n_p * FRAC_PI_2)
    }
}

pub fn eval_jonscher(params: &JonscherParams, grid: &FrequencyGrid) -> Result<ComplexSpectrum> {
    params.validate()?;
    Ok(ComplexSpectrum::from_fn(grid, |w| params.value_at(w)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrimComponent {
    /// Volumetric fraction in (0, 1].
    pub fraction: f64,
    pub constituent: DebyePoleParams,
}

/// Complex refractive index mixture of Debye constituents.
#[derive(Debug, Clone, PartialEq)]
pub struct CrimParams {
    pub shape_a: f64,
    pub components: Vec<CrimComponent>,
}

impl CrimParams {
    pub fn validate(&self) -> Result<()> {
        if !self.shape_a.is_finite() || self.shape_a == 0.0 {
            return Err(invalid(
                "shape_a",
                format!("must be finite and nonzero, got {}", self.shape_a),
            ));
        }
        if self.components.is_empty() {
            return Err(invalid("components", "at least one component required"));
        }
        for c in &self.components {
            if !(c.fraction > 0.0 && c.fraction <= 1.0) {
                return Err(invalid(
                    "fraction",
                    format!("must lie in (0, 1], got {}", c.fraction),
                ));
            }
            c.constituent.validate()?;
        }
        let total: f64 = self.components.iter().map(|c| c.fraction).sum();
        if (total - 1.0).abs() > FRACTION_SUM_TOL {
            return Err(invalid(
                "fraction",
                format!("volume fractions sum to {total}, expected 1"),
            ));
        }
        Ok(())
    }

    fn value_at(&self, omega: f64) -> Complex64 {
        let mix: Complex64 = self
            .components
            .iter()
            .map(|c| c.fraction * c.constituent.value_at(omega).powf(self.shape_a))
            .sum();
        mix.powf(1.0 / self.shape_a)
    }
}

pub fn eval_crim(params: &CrimParams, grid: &FrequencyGrid) -> Result<ComplexSpectrum> {
    params.validate()?;
    Ok(ComplexSpectrum::from_fn(grid, |w| params.value_at(w)))
}

/// Any relaxation model that can serve as a fitting target.
#[derive(Debug, Clone, PartialEq)]
pub enum RelaxationModel {
    HavriliakNegami(HavriliakNegamiParams),
    Jonscher(JonscherParams),
    Crim(CrimParams),
    RawData(RawDataTable),
}

impl RelaxationModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::HavriliakNegami(p) => p.validate(),
            Self::Jonscher(p) => p.validate(),
            Self::Crim(p) => p.validate(),
            Self::RawData(_) => Ok(()),
        }
    }

    pub fn spectrum(&self, grid: &FrequencyGrid) -> Result<ComplexSpectrum> {
        match self {
            Self::HavriliakNegami(p) => eval_havriliak_negami(p, grid),
            Self::Jonscher(p) => eval_jonscher(p, grid),
            Self::Crim(p) => eval_crim(p, grid),
            Self::RawData(t) => super::interp_raw_data(t, grid),
        }
    }
}

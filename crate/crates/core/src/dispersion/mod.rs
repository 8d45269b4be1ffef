//! Relaxation functions evaluated as complex relative permittivity spectra.
//!
//! Every spectrum is stored as the complex value `ε = ε' − jε''`, so a lossy
//! medium has a negative imaginary component and a positive loss `ε''`.

mod models;
mod raw;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use models::{
    eval_crim, eval_debye_pole, eval_havriliak_negami, eval_jonscher, CrimComponent, CrimParams,
    DebyePoleParams, HavriliakNegamiParams, JonscherParams, RelaxationModel,
};
pub use raw::{interp_raw_data, RawDataRow, RawDataTable};

/// Default number of grid points across the fitting band.
pub const DEFAULT_GRID_POINTS: usize = 50;

/// Strictly increasing, strictly positive angular frequencies (rad/s).
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    omegas: Vec<f64>,
}

impl FrequencyGrid {
    pub fn new(omegas: Vec<f64>) -> Result<Self> {
        if omegas.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {}",
                omegas.len()
            )));
        }
        if omegas.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::InvalidGrid(
                "angular frequencies must be finite and positive".into(),
            ));
        }
        if omegas.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid(
                "angular frequencies must be strictly increasing".into(),
            ));
        }
        Ok(Self { omegas })
    }

    /// Angular frequencies in rad/s.
    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn frequencies_hz(&self) -> impl Iterator<Item = f64> + '_ {
        self.omegas.iter().map(|w| w / (2.0 * PI))
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.omegas[0]
    }

    pub fn last(&self) -> f64 {
        self.omegas[self.omegas.len() - 1]
    }
}

/// Log-spaced grid of `n_points` angular frequencies from `2π·f_min` to `2π·f_max`.
pub fn make_log_grid(f_min: f64, f_max: f64, n_points: usize) -> Result<FrequencyGrid> {
    if !(f_min.is_finite() && f_max.is_finite()) || f_min <= 0.0 || f_max <= 0.0 {
        return Err(Error::InvalidGrid(format!(
            "band edges must be positive, got [{f_min}, {f_max}] Hz"
        )));
    }
    if f_min >= f_max {
        return Err(Error::InvalidGrid(format!(
            "lower band edge {f_min} Hz must be below upper edge {f_max} Hz"
        )));
    }
    if n_points < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 points, got {n_points}"
        )));
    }
    let lo = f_min.log10();
    let hi = f_max.log10();
    let step = (hi - lo) / (n_points - 1) as f64;
    let mut omegas: Vec<f64> = (0..n_points)
        .map(|i| 2.0 * PI * 10f64.powf(lo + step * i as f64))
        .collect();
    // pin the endpoints exactly
    omegas[0] = 2.0 * PI * f_min;
    omegas[n_points - 1] = 2.0 * PI * f_max;
    FrequencyGrid::new(omegas)
}

/// Complex relative permittivity sampled on a [`FrequencyGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrum {
    grid: FrequencyGrid,
    values: Vec<Complex64>,
}

impl ComplexSpectrum {
    pub fn new(grid: FrequencyGrid, values: Vec<Complex64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::InvalidGrid(format!(
                "{} values for a {}-point grid",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    /// Builds a spectrum from `ε'` and `ε''` parts.
    pub fn from_parts(grid: FrequencyGrid, real: &[f64], loss: &[f64]) -> Result<Self> {
        if real.len() != loss.len() {
            return Err(Error::InvalidGrid(
                "real and loss parts differ in length".into(),
            ));
        }
        let values = real
            .iter()
            .zip(loss)
            .map(|(&re, &im)| Complex64::new(re, -im))
            .collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    /// Raw complex values, `ε' − jε''`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `ε'` at point `i`.
    pub fn real(&self, i: usize) -> f64 {
        self.values[i].re
    }

    /// `ε''` at point `i` (positive for a lossy medium).
    pub fn loss(&self, i: usize) -> f64 {
        -self.values[i].im
    }

    pub fn reals(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(|v| v.re)
    }

    pub fn losses(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(|v| -v.im)
    }

    pub(crate) fn from_fn(grid: &FrequencyGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.omegas().iter().map(|&w| f(w)).collect();
        Self {
            grid: grid.clone(),
            values,
        }
    }
}

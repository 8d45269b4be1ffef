//! Multi-pole Debye expansion fitting.
//!
//! The relaxation times are searched globally in log10 space while, for each
//! candidate set, `ε∞` and the pole weights come from a damped linear
//! least-squares solve. The outer objective is the summed average relative
//! error of the real and imaginary parts.

mod cost;
mod weights;

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

use num_complex::Complex64;

use crate::dispersion::{make_log_grid, ComplexSpectrum, FrequencyGrid, RelaxationModel, DEFAULT_GRID_POINTS};
use crate::error::{invalid, Error, Result};
use crate::optim::{minimize, Algorithm, Bounds, OptimizerSettings};

pub use cost::{cost, part_errors, relative_error_percent, ERROR_FLOOR, FAILED_COST};
pub use weights::{solve_weights_dls, WeightSolveResult, RIDGE_SCALE, WEIGHT_FLOOR};

pub const MAX_POLES: usize = 20;
/// Automatic pole selection stops at the first fit below this total error (percent).
pub const AUTO_POLE_TARGET: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DebyePole {
    pub delta_eps: f64,
    /// Relaxation time in seconds.
    pub tau: f64,
}

/// `ε∞ + Σ Δεₙ / (1 + jωτₙ)` with poles kept in descending `τ` order.
#[derive(Debug, Clone, PartialEq)]
pub struct DebyeExpansion {
    eps_inf: f64,
    poles: Vec<DebyePole>,
}

impl DebyeExpansion {
    pub fn new(eps_inf: f64, mut poles: Vec<DebyePole>) -> Result<Self> {
        if poles.is_empty() || poles.len() > MAX_POLES {
            return Err(invalid(
                "poles",
                format!("need between 1 and {MAX_POLES} poles, got {}", poles.len()),
            ));
        }
        if !eps_inf.is_finite() {
            return Err(invalid("eps_inf", "must be finite"));
        }
        for p in &poles {
            if !(p.tau.is_finite() && p.tau > 0.0) {
                return Err(invalid("tau", format!("must be positive, got {}", p.tau)));
            }
            if !p.delta_eps.is_finite() {
                return Err(invalid("delta_eps", "must be finite"));
            }
        }
        poles.sort_by(|a, b| b.tau.partial_cmp(&a.tau).unwrap_or(Ordering::Equal));
        Ok(Self { eps_inf, poles })
    }

    pub fn eps_inf(&self) -> f64 {
        self.eps_inf
    }

    pub fn poles(&self) -> &[DebyePole] {
        &self.poles
    }

    pub fn pole_count(&self) -> usize {
        self.poles.len()
    }

    /// Positive weights and `ε∞ ≥ 1`, as required of a finalized fit.
    pub fn is_physical(&self) -> bool {
        self.eps_inf >= 1.0 && self.poles.iter().all(|p| p.delta_eps > 0.0)
    }
}

/// Real part and loss of an expansion at every grid point.
pub(crate) fn eval_expansion_parts(
    eps_inf: f64,
    poles: &[DebyePole],
    grid: &FrequencyGrid,
) -> (Vec<f64>, Vec<f64>) {
    grid.omegas()
        .iter()
        .map(|&omega| {
            poles.iter().fold((eps_inf, 0.0), |(re, loss), p| {
                let (kr, ki) = weights::pole_kernels(omega, p.tau);
                (re + p.delta_eps * kr, loss + p.delta_eps * ki)
            })
        })
        .unzip()
}

pub fn eval_expansion(expansion: &DebyeExpansion, grid: &FrequencyGrid) -> ComplexSpectrum {
    let (re, loss) = eval_expansion_parts(expansion.eps_inf, &expansion.poles, grid);
    let values = re
        .into_iter()
        .zip(loss)
        .map(|(r, l)| Complex64::new(r, -l))
        .collect();
    ComplexSpectrum::new(grid.clone(), values).expect("one value per grid point")
}

/// Fixed pole count, or automatic selection (`-1` on the command line).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleCount {
    Fixed(usize),
    Auto,
}

impl PoleCount {
    pub fn from_signed(n: i64) -> Result<Self> {
        match n {
            -1 => Ok(Self::Auto),
            1..=20 => Ok(Self::Fixed(n as usize)),
            _ => Err(invalid(
                "n_poles",
                format!("must be -1 or between 1 and {MAX_POLES}, got {n}"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitConfig {
    pub f_min: f64,
    pub f_max: f64,
    pub grid_points: usize,
    pub poles: PoleCount,
    /// Algorithm and hyperparameters; its seed is replaced by the fit seed.
    pub optimizer: OptimizerSettings,
    /// `None` draws a seed from system entropy.
    pub seed: Option<u64>,
}

impl FitConfig {
    /// PSO-DLS over `[f_min, f_max]` Hz on the default grid.
    pub fn new(f_min: f64, f_max: f64, poles: PoleCount) -> Self {
        Self {
            f_min,
            f_max,
            grid_points: DEFAULT_GRID_POINTS,
            poles,
            optimizer: OptimizerSettings::new(Algorithm::ParticleSwarm),
            seed: None,
        }
    }

    pub fn with_algorithm(mut self, algorithm: Algorithm) -> Self {
        self.optimizer = OptimizerSettings::new(algorithm);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_grid_points(mut self, n: usize) -> Self {
        self.grid_points = n;
        self
    }

    pub fn grid(&self) -> Result<FrequencyGrid> {
        make_log_grid(self.f_min, self.f_max, self.grid_points)
    }

    /// Search box for log10 relaxation times: relaxation frequencies from a
    /// decade below the band to a decade above it.
    pub fn log10_tau_range(&self) -> (f64, f64) {
        let lower = (1.0 / (2.0 * PI * self.f_max * 10.0)).log10();
        let upper = (1.0 / (2.0 * PI * self.f_min / 10.0)).log10();
        (lower, upper)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub expansion: DebyeExpansion,
    /// Average relative error of `ε'`, percent.
    pub err_real: f64,
    /// Average relative error of `ε''`, percent.
    pub err_imag: f64,
    pub err_total: f64,
    /// Wall-clock seconds.
    pub duration: f64,
    /// `(iteration, best cost)`, non-increasing.
    pub convergence: Vec<(usize, f64)>,
    pub seed_used: u64,
}

impl FitReport {
    /// Writes the convergence trace as `iteration,best_cost` CSV.
    pub fn write_convergence_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["iteration", "best_cost"])?;
        for (it, c) in &self.convergence {
            w.write_record([it.to_string(), c.to_string()])?;
        }
        w.flush()
    }
}

/// Evaluates `model` on the grid described by `config`.
pub fn target_spectrum(model: &RelaxationModel, config: &FitConfig) -> Result<ComplexSpectrum> {
    model.spectrum(&config.grid()?)
}

/// Fits a Debye expansion to `model`. With [`PoleCount::Auto`] this runs
/// [`fit_auto_poles`].
pub fn fit(model: &RelaxationModel, config: &FitConfig) -> Result<FitReport> {
    match config.poles {
        PoleCount::Auto => fit_auto_poles(model, config),
        PoleCount::Fixed(n) => {
            let start = Instant::now();
            let seed = resolve_seed(config.seed);
            let target = target_spectrum(model, config)?;
            let mut report = fit_target(&target, config, n, seed)?;
            report.duration = start.elapsed().as_secs_f64();
            Ok(report)
        }
    }
}

/// Raises the pole count from 1 until the total error drops below
/// [`AUTO_POLE_TARGET`] or [`MAX_POLES`] is reached. Attempt `N` runs with
/// seed `seed + N`.
pub fn fit_auto_poles(model: &RelaxationModel, config: &FitConfig) -> Result<FitReport> {
    if config.poles != PoleCount::Auto {
        return Err(Error::Config(
            "automatic pole selection requires a pole count of -1".into(),
        ));
    }
    let start = Instant::now();
    let seed = resolve_seed(config.seed);
    let target = target_spectrum(model, config)?;
    let max = MAX_POLES.min(target.len());
    let mut report = fit_target(&target, config, 1, seed.wrapping_add(1))?;
    for n in 2..=max {
        if report.err_total < AUTO_POLE_TARGET {
            break;
        }
        report = fit_target(&target, config, n, seed.wrapping_add(n as u64))?;
    }
    report.seed_used = seed;
    report.duration = start.elapsed().as_secs_f64();
    Ok(report)
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

fn fit_target(
    target: &ComplexSpectrum,
    config: &FitConfig,
    n_poles: usize,
    seed: u64,
) -> Result<FitReport> {
    if n_poles > target.len() {
        return Err(invalid(
            "n_poles",
            format!("{n_poles} poles exceed the {} grid points", target.len()),
        ));
    }
    let (lo, hi) = config.log10_tau_range();
    let bounds = Bounds::uniform(n_poles, lo, hi)?;
    let settings = OptimizerSettings {
        seed,
        ..config.optimizer.clone()
    };
    let result = minimize(|x: &[f64]| cost(x, target), &bounds, &settings)?;

    let taus: Vec<f64> = result.best_point.iter().map(|x| 10f64.powf(*x)).collect();
    let weights = solve_weights_dls(&taus, target)?;
    let poles = weights
        .deltas
        .iter()
        .zip(&taus)
        .map(|(&delta_eps, &tau)| DebyePole { delta_eps, tau })
        .collect();
    let expansion = DebyeExpansion::new(weights.eps_inf, poles)?;
    let fitted = eval_expansion(&expansion, target.grid());
    let (err_real, err_imag) = part_errors(&fitted, target);
    Ok(FitReport {
        expansion,
        err_real,
        err_imag,
        err_total: err_real + err_imag,
        duration: 0.0,
        convergence: result.trace,
        seed_used: seed,
    })
}

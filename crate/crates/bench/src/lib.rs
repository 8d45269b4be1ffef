//! Shared fixtures for the benchmarks.

use debyefit::{
    make_log_grid, ComplexSpectrum, FitConfig, HavriliakNegamiParams, PoleCount, RelaxationModel,
};

pub const F_MIN: f64 = 1e7;
pub const F_MAX: f64 = 1e11;

/// Havriliak-Negami soil model used throughout the benchmarks.
pub fn kelley() -> RelaxationModel {
    RelaxationModel::HavriliakNegami(HavriliakNegamiParams {
        eps_inf: 2.7,
        delta_eps: 5.9,
        tau0: 9.4e-10,
        alpha: 0.91,
        beta: 0.45,
    })
}

pub fn kelley_target(points: usize) -> ComplexSpectrum {
    let grid = make_log_grid(F_MIN, F_MAX, points).expect("valid band");
    kelley().spectrum(&grid).expect("valid model")
}

pub fn kelley_config(poles: usize) -> FitConfig {
    FitConfig::new(F_MIN, F_MAX, PoleCount::Fixed(poles)).with_seed(1)
}

/// Log10 relaxation times spread evenly over the search box.
pub fn spread_log_taus(config: &FitConfig, n: usize) -> Vec<f64> {
    let (lo, hi) = config.log10_tau_range();
    (0..n)
        .map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64)
        .collect()
}

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * (2.0 * std::f64::consts::PI * v).cos())
            .sum::<f64>()
}

//! The scalar objective minimized over log10 relaxation times.

use super::weights::solve_weights_dls;
use super::{eval_expansion_parts, DebyePole};
use crate::dispersion::ComplexSpectrum;

/// Denominator floor for pointwise relative errors.
pub const ERROR_FLOOR: f64 = 1e-6;
/// Returned when a candidate cannot be scored at all.
pub const FAILED_COST: f64 = 1e12;

/// Average pointwise relative error of one part, in percent.
pub fn relative_error_percent(fit: impl Iterator<Item = f64>, target: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = fit.zip(target).fold((0.0, 0usize), |(s, n), (f, t)| {
        (s + (f - t).abs() / t.abs().max(ERROR_FLOOR), n + 1)
    });
    100.0 * sum / count.max(1) as f64
}

/// `(err_real, err_imag)` between two spectra on the same grid, in percent.
pub fn part_errors(fit: &ComplexSpectrum, target: &ComplexSpectrum) -> (f64, f64) {
    (
        relative_error_percent(fit.reals(), target.reals()),
        relative_error_percent(fit.losses(), target.losses()),
    )
}

/// Summed real and imaginary error (percent) of the best weights for the
/// relaxation times `10^log10_taus`.
pub fn cost(log10_taus: &[f64], target: &ComplexSpectrum) -> f64 {
    let taus: Vec<f64> = log10_taus.iter().map(|x| 10f64.powf(*x)).collect();
    let Ok(weights) = solve_weights_dls(&taus, target) else {
        return FAILED_COST;
    };
    let poles: Vec<DebyePole> = weights
        .deltas
        .iter()
        .zip(&taus)
        .map(|(&delta_eps, &tau)| DebyePole { delta_eps, tau })
        .collect();
    let (fit_re, fit_loss) = eval_expansion_parts(weights.eps_inf, &poles, target.grid());
    let err = relative_error_percent(fit_re.into_iter(), target.reals())
        + relative_error_percent(fit_loss.into_iter(), target.losses());
    if err.is_finite() {
        err
    } else {
        FAILED_COST
    }
}

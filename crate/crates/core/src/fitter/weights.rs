//! Linear solve for the expansion weights at fixed relaxation times.

use crate::dispersion::ComplexSpectrum;
use crate::error::{invalid, Error, Result};

/// Relative ridge applied to the normal equations.
pub const RIDGE_SCALE: f64 = 1e-10;
/// Value substituted for weights that come out exactly zero.
pub const WEIGHT_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightSolveResult {
    pub eps_inf: f64,
    /// One strictly positive weight per relaxation time, in input order.
    pub deltas: Vec<f64>,
    /// At least one raw weight came out negative and was sign-flipped.
    pub penalized: bool,
}

/// Real and loss kernels of a unit Debye pole at angular frequency `omega`.
pub(crate) fn pole_kernels(omega: f64, tau: f64) -> (f64, f64) {
    let wt = omega * tau;
    let den = 1.0 + wt * wt;
    (1.0 / den, wt / den)
}

/// Least-squares design for `[ε∞, Δε₁ … Δε_N]`: one row for `ε'` and one for
/// `ε''` per grid point.
pub(crate) struct Design {
    rows: Vec<(Vec<f64>, f64)>,
}

impl Design {
    pub(crate) fn new(taus: &[f64], target: &ComplexSpectrum) -> Self {
        let mut rows = Vec::with_capacity(2 * target.len());
        for (i, &omega) in target.grid().omegas().iter().enumerate() {
            let (re, im): (Vec<f64>, Vec<f64>) =
                taus.iter().map(|&tau| pole_kernels(omega, tau)).unzip();
            let mut real_row = Vec::with_capacity(taus.len() + 1);
            real_row.push(1.0);
            real_row.extend(re);
            let mut loss_row = Vec::with_capacity(taus.len() + 1);
            loss_row.push(0.0);
            loss_row.extend(im);
            rows.push((real_row, target.real(i)));
            rows.push((loss_row, target.loss(i)));
        }
        Self { rows }
    }

    /// Damped normal-equation solve over the columns in `free`, with the
    /// remaining columns held at the values given in `fixed`.
    fn solve(&self, free: &[usize], fixed: &[(usize, f64)]) -> Result<Vec<f64>> {
        let n = free.len();
        let mut ata = vec![0.0; n * n];
        let mut atb = vec![0.0; n];
        for (a, b) in &self.rows {
            let rhs = b - fixed.iter().map(|&(k, v)| a[k] * v).sum::<f64>();
            for (p, &cp) in free.iter().enumerate() {
                let ap = a[cp];
                if ap == 0.0 {
                    continue;
                }
                atb[p] += ap * rhs;
                for (q, &cq) in free.iter().enumerate().take(p + 1) {
                    ata[p * n + q] += ap * a[cq];
                }
            }
        }
        for p in 0..n {
            for q in 0..p {
                ata[q * n + p] = ata[p * n + q];
            }
        }
        let trace: f64 = (0..n).map(|p| ata[p * n + p]).sum();
        let ridge = RIDGE_SCALE * trace / n as f64;
        for p in 0..n {
            ata[p * n + p] += ridge;
        }
        cholesky_solve(&mut ata, &mut atb, n).ok_or(Error::SingularSystem(n))?;
        Ok(atb)
    }
}

/// Solves `A x = b` in place for symmetric positive definite `A` (row-major).
fn cholesky_solve(a: &mut [f64], b: &mut [f64], n: usize) -> Option<()> {
    for j in 0..n {
        let mut diag = a[j * n + j];
        for k in 0..j {
            diag -= a[j * n + k] * a[j * n + k];
        }
        if !(diag > 0.0) || !diag.is_finite() {
            return None;
        }
        let diag = diag.sqrt();
        a[j * n + j] = diag;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / diag;
        }
    }
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= a[i * n + k] * b[k];
        }
        b[i] = s / a[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= a[k * n + i] * b[k];
        }
        b[i] = s / a[i * n + i];
    }
    Some(())
}

/// Fits `ε∞` and one weight per relaxation time to `target` by damped least
/// squares.
///
/// `ε∞` below 1 is pinned at 1 and the weights re-solved. Negative weights are
/// then sign-flipped, which makes the candidate fit poorly and so steers the
/// outer search toward relaxation times with positive weights.
pub fn solve_weights_dls(taus: &[f64], target: &ComplexSpectrum) -> Result<WeightSolveResult> {
    if taus.is_empty() {
        return Err(invalid("taus", "at least one relaxation time required"));
    }
    if let Some(t) = taus.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(invalid("taus", format!("relaxation times must be positive, got {t}")));
    }
    if taus.len() > target.len() {
        return Err(invalid(
            "taus",
            format!(
                "{} poles exceed the {} grid points",
                taus.len(),
                target.len()
            ),
        ));
    }
    let design = Design::new(taus, target);
    let n = taus.len();
    let all: Vec<usize> = (0..=n).collect();
    let mut x = design.solve(&all, &[])?;
    if x[0] < 1.0 {
        let weights = design.solve(&all[1..], &[(0, 1.0)])?;
        x[0] = 1.0;
        x[1..].copy_from_slice(&weights);
    }
    let mut penalized = false;
    let deltas = x[1..]
        .iter()
        .map(|&d| {
            if d < 0.0 {
                penalized = true;
            }
            let d = d.abs();
            if d == 0.0 {
                WEIGHT_FLOOR
            } else {
                d
            }
        })
        .collect();
    Ok(WeightSolveResult {
        eps_inf: x[0],
        deltas,
        penalized,
    })
}

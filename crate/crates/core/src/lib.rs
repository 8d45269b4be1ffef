//! Multi-pole Debye expansion fitting for dispersive dielectric materials.
//!
//! [`dispersion`] evaluates relaxation models (Havriliak-Negami family,
//! Jonscher, CRIM mixtures, tabulated data) as complex permittivity spectra;
//! [`fitter`] approximates such a spectrum by a sum of Debye poles using a
//! global search over relaxation times ([`optim`]) with an inner damped
//! least-squares solve for the weights.

pub mod dispersion;
pub mod error;
pub mod fitter;
pub mod optim;

pub use dispersion::{
    make_log_grid, ComplexSpectrum, FrequencyGrid, HavriliakNegamiParams, JonscherParams,
    RelaxationModel,
};
pub use error::{Error, Result};
pub use fitter::{
    eval_expansion, fit, fit_auto_poles, DebyeExpansion, DebyePole, FitConfig, FitReport,
    PoleCount,
};
pub use optim::{minimize, Algorithm, Bounds, OptimizeResult, OptimizerSettings};

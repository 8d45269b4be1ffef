//! Bounded-box global minimizers behind one interface.
//!
//! All three algorithms draw from a ChaCha stream seeded by
//! [`OptimizerSettings::seed`], so a fixed seed reproduces the exact
//! evaluation sequence.

mod da;
mod de;
mod pso;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use da::da_minimize;
pub use de::de_minimize;
pub use pso::pso_minimize;

/// Consecutive negligible improvements before PSO/DE stop early.
pub const STALL_WINDOW: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    ParticleSwarm,
    DifferentialEvolution,
    DualAnnealing,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::ParticleSwarm,
        Algorithm::DifferentialEvolution,
        Algorithm::DualAnnealing,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::ParticleSwarm => "pso",
            Self::DifferentialEvolution => "de",
            Self::DualAnnealing => "da",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pso" => Ok(Self::ParticleSwarm),
            "de" => Ok(Self::DifferentialEvolution),
            "da" => Ok(Self::DualAnnealing),
            other => Err(Error::Config(format!(
                "unknown algorithm `{other}` (expected pso, de or da)"
            ))),
        }
    }
}

/// Per-dimension search box, `lower[d] < upper[d]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(Error::Config(format!(
                "bounds need matching nonempty dimensions, got {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        for (d, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::Config(format!(
                    "dimension {d}: lower bound {lo} must be below upper bound {hi}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval in every dimension.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, d: usize) -> f64 {
        self.upper[d] - self.lower[d]
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.dim()
            && point
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (lo, hi))| lo <= x && x <= hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsoParams {
    pub inertia_start: f64,
    pub inertia_end: f64,
    pub cognitive: f64,
    pub social: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            inertia_start: 0.9,
            inertia_end: 0.4,
            cognitive: 1.49,
            social: 1.49,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeParams {
    /// Differential weight `F`.
    pub weight: f64,
    /// Crossover rate `CR`.
    pub crossover: f64,
}

impl Default for DeParams {
    fn default() -> Self {
        Self {
            weight: 0.8,
            crossover: 0.9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DaParams {
    /// Tsallis visiting parameter `q_v`, in (1, 3).
    pub visit: f64,
    /// Generalized Metropolis acceptance parameter `q_a`.
    pub accept: f64,
    pub initial_temp: f64,
    /// Restart once the temperature falls below `initial_temp * restart_temp_ratio`.
    pub restart_temp_ratio: f64,
    /// Annealing steps between local refinements of the best point.
    pub local_search_every: usize,
}

impl Default for DaParams {
    fn default() -> Self {
        Self {
            visit: 2.62,
            accept: -5.0,
            initial_temp: 5230.0,
            restart_temp_ratio: 2e-5,
            local_search_every: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerSettings {
    pub algorithm: Algorithm,
    /// PSO iterations, DE generations or DA annealing steps.
    pub max_iterations: usize,
    /// Swarm size (PSO) or population (DE); unused by DA.
    pub population: usize,
    pub seed: u64,
    /// Relative best-cost improvement below which PSO/DE count an iteration as stalled.
    pub tolerance: f64,
    pub pso: PsoParams,
    pub de: DeParams,
    pub da: DaParams,
}

impl OptimizerSettings {
    /// Canonical defaults for `algorithm`.
    pub fn new(algorithm: Algorithm) -> Self {
        let (max_iterations, population) = match algorithm {
            Algorithm::ParticleSwarm => (100, 40),
            Algorithm::DifferentialEvolution => (200, 50),
            Algorithm::DualAnnealing => (1000, 0),
        };
        Self {
            algorithm,
            max_iterations,
            population,
            seed: 0,
            tolerance: 1e-8,
            pso: PsoParams::default(),
            de: DeParams::default(),
            da: DaParams::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn with_population(mut self, population: usize) -> Self {
        self.population = population;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be at least 1".into()));
        }
        if matches!(
            self.algorithm,
            Algorithm::ParticleSwarm | Algorithm::DifferentialEvolution
        ) && self.population < 5
        {
            return Err(Error::Config(format!(
                "{} needs a population of at least 5, got {}",
                self.algorithm, self.population
            )));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::Config("tolerance must be nonnegative".into()));
        }
        if self.algorithm == Algorithm::DualAnnealing {
            let qv = self.da.visit;
            if !(qv > 1.0 && qv < 3.0) {
                return Err(Error::Config(format!("visit parameter {qv} outside (1, 3)")));
            }
            if !(self.da.accept < 1.0) {
                return Err(Error::Config("accept parameter must be below 1".into()));
            }
            if !(self.da.initial_temp > 0.0) {
                return Err(Error::Config("initial temperature must be positive".into()));
            }
            if self.da.local_search_every == 0 {
                return Err(Error::Config("local_search_every must be at least 1".into()));
            }
        }
        Ok(())
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeResult {
    pub best_point: Vec<f64>,
    pub best_cost: f64,
    /// `(iteration, best cost so far)`, iteration 0 being the initial sample.
    pub trace: Vec<(usize, f64)>,
    pub evaluations: usize,
}

/// Dispatches to the configured algorithm.
pub fn minimize<F>(objective: F, bounds: &Bounds, settings: &OptimizerSettings) -> Result<OptimizeResult>
where
    F: Fn(&[f64]) -> f64,
{
    settings.validate()?;
    Ok(match settings.algorithm {
        Algorithm::ParticleSwarm => pso_minimize(objective, bounds, settings),
        Algorithm::DifferentialEvolution => de_minimize(objective, bounds, settings),
        Algorithm::DualAnnealing => da_minimize(objective, bounds, settings),
    })
}

/// Early-stopping rule shared by PSO and DE.
///
/// Only iterations that improve the best cost are judged: an improvement
/// smaller than `tolerance` relative to the previous best counts as stalled,
/// a larger one resets the count. Iterations that find nothing better leave
/// the count untouched, so a population that is still exploring is not cut
/// short.
#[derive(Debug)]
pub(crate) struct StallDetector {
    previous: Option<f64>,
    stalled: usize,
    tolerance: f64,
}

impl StallDetector {
    pub(crate) fn new(tolerance: f64) -> Self {
        Self {
            previous: None,
            stalled: 0,
            tolerance,
        }
    }

    /// Records the best cost after an iteration; true once [`STALL_WINDOW`]
    /// consecutive improvements were all below the tolerance.
    pub(crate) fn stalled(&mut self, best: f64) -> bool {
        if let Some(prev) = self.previous.replace(best) {
            let gain = prev - best;
            if gain > 0.0 {
                if gain < self.tolerance * prev.abs() {
                    self.stalled += 1;
                } else {
                    self.stalled = 0;
                }
            }
        }
        self.stalled >= STALL_WINDOW
    }
}

/// Keeps `(iteration, cost)` entries non-increasing.
pub(crate) fn record(trace: &mut Vec<(usize, f64)>, iteration: usize, best: f64) {
    let best = trace.last().map_or(best, |&(_, prev)| prev.min(best));
    trace.push((iteration, best));
}

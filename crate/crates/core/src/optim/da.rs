//! Dual annealing: generalized simulated annealing with a Tsallis visiting
//! distribution, plus periodic coordinate-wise refinement of the best point.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use statrs::function::gamma::ln_gamma;

use super::{record, Bounds, DaParams, OptimizeResult, OptimizerSettings};

const TAIL_LIMIT: f64 = 1e8;
const MIN_VISIT_BOUND: f64 = 1e-10;
const INV_GOLDEN: f64 = 0.618_033_988_749_894_9;
const GOLDEN_ITERATIONS: usize = 40;
/// Bracket half-widths, as fractions of the box width, for successive sweeps.
const REFINE_RADII: [f64; 2] = [0.1, 0.01];

/// Draws Tsallis-distributed steps for a given visiting parameter.
struct Visitor {
    qv: f64,
    factor4_p: f64,
    factor6: f64,
}

impl Visitor {
    fn new(qv: f64) -> Self {
        let factor2 = ((4.0 - qv) * (qv - 1.0).ln()).exp();
        let factor3 = ((2.0 - qv) * 2f64.ln() / (qv - 1.0)).exp();
        let factor4_p = PI.sqrt() * factor2 / (factor3 * (3.0 - qv));
        let factor5 = 1.0 / (qv - 1.0) - 0.5;
        let d1 = 2.0 - factor5;
        let factor6 = PI * (1.0 - factor5) / (PI * (1.0 - factor5)).sin() / ln_gamma(d1).exp();
        Self {
            qv,
            factor4_p,
            factor6,
        }
    }

    fn step(&self, rng: &mut ChaCha8Rng, temperature: f64) -> f64 {
        let qv = self.qv;
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let factor1 = (temperature.ln() / (qv - 1.0)).exp();
        let factor4 = self.factor4_p * factor1;
        let sigma = (-(qv - 1.0) * (self.factor6 / factor4).ln() / (3.0 - qv)).exp();
        let den = ((qv - 1.0) * y.abs().ln() / (3.0 - qv)).exp();
        let visit = sigma * x / den;
        if visit > TAIL_LIMIT {
            TAIL_LIMIT * rng.random::<f64>()
        } else if visit < -TAIL_LIMIT {
            -TAIL_LIMIT * rng.random::<f64>()
        } else if visit.is_nan() {
            0.0
        } else {
            visit
        }
    }
}

/// Wraps `value` periodically into the box along coordinate `d`.
fn wrap(bounds: &Bounds, d: usize, value: f64) -> f64 {
    let lo = bounds.lower()[d];
    let width = bounds.width(d);
    let shifted = (value - lo) % width + width;
    let mut wrapped = shifted % width + lo;
    if (wrapped - lo).abs() < MIN_VISIT_BOUND {
        wrapped += MIN_VISIT_BOUND;
    }
    wrapped.clamp(lo, bounds.upper()[d])
}

struct Annealer<'a, F> {
    objective: F,
    bounds: &'a Bounds,
    params: DaParams,
    rng: ChaCha8Rng,
    visitor: Visitor,
    current: Vec<f64>,
    current_cost: f64,
    best: Vec<f64>,
    best_cost: f64,
    evaluations: usize,
}

impl<F: Fn(&[f64]) -> f64> Annealer<'_, F> {
    fn eval(&mut self, x: &[f64]) -> f64 {
        self.evaluations += 1;
        let c = (self.objective)(x);
        if c.is_nan() {
            f64::INFINITY
        } else {
            c
        }
    }

    fn random_point(&mut self) -> Vec<f64> {
        let bounds = self.bounds;
        (0..bounds.dim())
            .map(|d| self.rng.random_range(bounds.lower()[d]..=bounds.upper()[d]))
            .collect()
    }

    fn visit(&mut self, j: usize, temperature: f64) -> Vec<f64> {
        let dim = self.bounds.dim();
        let mut x = self.current.clone();
        if j < dim {
            for d in 0..dim {
                let step = self.visitor.step(&mut self.rng, temperature);
                x[d] = wrap(self.bounds, d, x[d] + step);
            }
        } else {
            let d = j - dim;
            let step = self.visitor.step(&mut self.rng, temperature);
            x[d] = wrap(self.bounds, d, x[d] + step);
        }
        x
    }

    /// One Markov chain of `2·dim` visits at the given temperature.
    fn chain(&mut self, step: usize, temperature: f64) {
        let temperature_step = temperature / (step + 1) as f64;
        let qa = self.params.accept;
        for j in 0..2 * self.bounds.dim() {
            let candidate = self.visit(j, temperature);
            let cost = self.eval(&candidate);
            if cost < self.current_cost {
                if cost < self.best_cost {
                    self.best_cost = cost;
                    self.best.clone_from(&candidate);
                }
                self.current = candidate;
                self.current_cost = cost;
            } else {
                let r: f64 = self.rng.random();
                let p = 1.0 - (1.0 - qa) * (cost - self.current_cost) / temperature_step;
                let accept_prob = if p <= 0.0 { 0.0 } else { (p.ln() / (1.0 - qa)).exp() };
                if r <= accept_prob {
                    self.current = candidate;
                    self.current_cost = cost;
                }
            }
        }
    }

    /// Coordinate-wise golden-section descent from the best point.
    fn refine(&mut self) {
        let bounds = self.bounds;
        let mut x = self.best.clone();
        let mut fx = self.best_cost;
        for radius in REFINE_RADII {
            for d in 0..bounds.dim() {
                let r = radius * bounds.width(d);
                let mut a = (x[d] - r).max(bounds.lower()[d]);
                let mut b = (x[d] + r).min(bounds.upper()[d]);
                let mut probe = x.clone();
                let mut at = |t: f64, this: &mut Self| {
                    probe[d] = t;
                    this.eval(&probe)
                };
                let mut c = b - INV_GOLDEN * (b - a);
                let mut e = a + INV_GOLDEN * (b - a);
                let mut fc = at(c, self);
                let mut fe = at(e, self);
                for _ in 0..GOLDEN_ITERATIONS {
                    if fc < fe {
                        b = e;
                        e = c;
                        fe = fc;
                        c = b - INV_GOLDEN * (b - a);
                        fc = at(c, self);
                    } else {
                        a = c;
                        c = e;
                        fc = fe;
                        e = a + INV_GOLDEN * (b - a);
                        fe = at(e, self);
                    }
                }
                let (t, ft) = if fc < fe { (c, fc) } else { (e, fe) };
                if ft < fx {
                    x[d] = t;
                    fx = ft;
                }
            }
        }
        if fx < self.best_cost {
            self.best_cost = fx;
            self.best.clone_from(&x);
            self.current = x;
            self.current_cost = fx;
        }
    }
}

/// Minimizes `objective` over `bounds` by dual annealing.
///
/// The temperature follows `T₀·(2^(q_v−1) − 1) / ((1 + t)^(q_v−1) − 1)` and
/// the search restarts from a random point once it cools below
/// `T₀·restart_temp_ratio`. Runs exactly `max_iterations` annealing steps.
pub fn da_minimize<F>(objective: F, bounds: &Bounds, settings: &OptimizerSettings) -> OptimizeResult
where
    F: Fn(&[f64]) -> f64,
{
    let params = settings.da;
    let mut annealer = Annealer {
        objective,
        bounds,
        params,
        rng: settings.rng(),
        visitor: Visitor::new(params.visit),
        current: Vec::new(),
        current_cost: f64::INFINITY,
        best: Vec::new(),
        best_cost: f64::INFINITY,
        evaluations: 0,
    };
    let start = annealer.random_point();
    let cost = annealer.eval(&start);
    annealer.best = start.clone();
    annealer.best_cost = cost;
    annealer.current = start;
    annealer.current_cost = cost;

    let mut trace = Vec::with_capacity(settings.max_iterations + 1);
    record(&mut trace, 0, annealer.best_cost);

    let qv = params.visit;
    let t1 = ((qv - 1.0) * 2f64.ln()).exp() - 1.0;
    let restart_below = params.initial_temp * params.restart_temp_ratio;
    let mut local_step = 0usize;
    for iteration in 1..=settings.max_iterations {
        let s = local_step as f64 + 2.0;
        let t2 = ((qv - 1.0) * s.ln()).exp() - 1.0;
        let temperature = params.initial_temp * t1 / t2;
        if temperature < restart_below {
            let fresh = annealer.random_point();
            annealer.current_cost = annealer.eval(&fresh);
            annealer.current = fresh;
            local_step = 0;
        } else {
            annealer.chain(local_step, temperature);
            local_step += 1;
        }
        if iteration % params.local_search_every == 0 {
            annealer.refine();
        }
        record(&mut trace, iteration, annealer.best_cost);
    }

    OptimizeResult {
        best_point: annealer.best,
        best_cost: annealer.best_cost,
        trace,
        evaluations: annealer.evaluations,
    }
}

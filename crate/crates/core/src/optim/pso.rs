//! Global-best particle swarm with linearly decaying inertia.

use rand::Rng;

use super::{record, Bounds, OptimizeResult, OptimizerSettings, StallDetector};

struct Particle {
    position: Vec<f64>,
    velocity: Vec<f64>,
    best_position: Vec<f64>,
    best_cost: f64,
}

/// Minimizes `objective` over `bounds` with particle swarm optimization.
///
/// Positions leaving the box are clamped to the violated face and the
/// corresponding velocity component is zeroed.
pub fn pso_minimize<F>(objective: F, bounds: &Bounds, settings: &OptimizerSettings) -> OptimizeResult
where
    F: Fn(&[f64]) -> f64,
{
    let dim = bounds.dim();
    let params = settings.pso;
    let mut rng = settings.rng();
    let mut evaluations = 0;

    let mut swarm: Vec<Particle> = (0..settings.population)
        .map(|_| {
            let position: Vec<f64> = (0..dim)
                .map(|d| rng.random_range(bounds.lower()[d]..=bounds.upper()[d]))
                .collect();
            let velocity: Vec<f64> = (0..dim)
                .map(|d| {
                    let w = bounds.width(d);
                    rng.random_range(-w..=w)
                })
                .collect();
            Particle {
                best_position: position.clone(),
                position,
                velocity,
                best_cost: f64::INFINITY,
            }
        })
        .collect();

    let mut global_position = swarm[0].position.clone();
    let mut global_cost = f64::INFINITY;
    for p in &mut swarm {
        p.best_cost = objective(&p.position);
        evaluations += 1;
        if p.best_cost < global_cost {
            global_cost = p.best_cost;
            global_position.clone_from(&p.position);
        }
    }

    let mut trace = Vec::with_capacity(settings.max_iterations + 1);
    record(&mut trace, 0, global_cost);
    let mut stall = StallDetector::new(settings.tolerance);

    let span = settings.max_iterations.saturating_sub(1).max(1) as f64;
    for iteration in 1..=settings.max_iterations {
        let frac = (iteration - 1) as f64 / span;
        let inertia = params.inertia_start - (params.inertia_start - params.inertia_end) * frac;

        for p in &mut swarm {
            for d in 0..dim {
                let r1: f64 = rng.random();
                let r2: f64 = rng.random();
                let v = inertia * p.velocity[d]
                    + params.cognitive * r1 * (p.best_position[d] - p.position[d])
                    + params.social * r2 * (global_position[d] - p.position[d]);
                let x = p.position[d] + v;
                let (lo, hi) = (bounds.lower()[d], bounds.upper()[d]);
                if x < lo || x > hi {
                    p.position[d] = x.clamp(lo, hi);
                    p.velocity[d] = 0.0;
                } else {
                    p.position[d] = x;
                    p.velocity[d] = v;
                }
            }
        }

        for p in &mut swarm {
            let cost = objective(&p.position);
            evaluations += 1;
            if cost < p.best_cost {
                p.best_cost = cost;
                p.best_position.clone_from(&p.position);
                if cost < global_cost {
                    global_cost = cost;
                    global_position.clone_from(&p.position);
                }
            }
        }

        record(&mut trace, iteration, global_cost);
        if stall.stalled(global_cost) {
            break;
        }
    }

    OptimizeResult {
        best_point: global_position,
        best_cost: global_cost,
        trace,
        evaluations,
    }
}

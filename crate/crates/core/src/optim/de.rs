//! DE/rand/1/bin differential evolution.

use rand::Rng;

use super::{record, Bounds, OptimizeResult, OptimizerSettings, StallDetector};

/// Minimizes `objective` over `bounds` with differential evolution.
///
/// Each generation builds every trial vector from the previous population
/// before any replacement happens. Mutant coordinates that leave the box are
/// redrawn uniformly inside it.
pub fn de_minimize<F>(objective: F, bounds: &Bounds, settings: &OptimizerSettings) -> OptimizeResult
where
    F: Fn(&[f64]) -> f64,
{
    let dim = bounds.dim();
    let np = settings.population;
    let params = settings.de;
    let mut rng = settings.rng();

    let mut population: Vec<Vec<f64>> = (0..np)
        .map(|_| {
            (0..dim)
                .map(|d| rng.random_range(bounds.lower()[d]..=bounds.upper()[d]))
                .collect()
        })
        .collect();
    let mut costs: Vec<f64> = population.iter().map(|x| objective(x)).collect();
    let mut evaluations = np;

    let best_index = |costs: &[f64]| {
        costs
            .iter()
            .enumerate()
            .fold(0, |best, (i, &c)| if c < costs[best] { i } else { best })
    };

    let mut best = best_index(&costs);
    let mut trace = Vec::with_capacity(settings.max_iterations + 1);
    record(&mut trace, 0, costs[best]);
    let mut stall = StallDetector::new(settings.tolerance);

    for generation in 1..=settings.max_iterations {
        let mut trials = Vec::with_capacity(np);
        for i in 0..np {
            let [a, b, c] = pick_three(&mut rng, np, i);
            let forced = rng.random_range(0..dim);
            let trial: Vec<f64> = (0..dim)
                .map(|d| {
                    if d == forced || rng.random::<f64>() < params.crossover {
                        let v = population[a][d]
                            + params.weight * (population[b][d] - population[c][d]);
                        let (lo, hi) = (bounds.lower()[d], bounds.upper()[d]);
                        if (lo..=hi).contains(&v) {
                            v
                        } else {
                            rng.random_range(lo..=hi)
                        }
                    } else {
                        population[i][d]
                    }
                })
                .collect();
            trials.push(trial);
        }

        for (i, trial) in trials.into_iter().enumerate() {
            let cost = objective(&trial);
            evaluations += 1;
            if cost <= costs[i] {
                population[i] = trial;
                costs[i] = cost;
            }
        }

        best = best_index(&costs);
        record(&mut trace, generation, costs[best]);
        if stall.stalled(costs[best]) {
            break;
        }
    }

    OptimizeResult {
        best_point: population.swap_remove(best),
        best_cost: costs[best],
        trace,
        evaluations,
    }
}

/// Three distinct indices, all different from `exclude`.
fn pick_three<R: Rng>(rng: &mut R, n: usize, exclude: usize) -> [usize; 3] {
    let mut picked = [usize::MAX; 3];
    let mut k = 0;
    while k < 3 {
        let j = rng.random_range(0..n);
        if j != exclude && !picked[..k].contains(&j) {
            picked[k] = j;
            k += 1;
        }
    }
    picked
}

//! Fits the Kelley Havriliak-Negami benchmark with each optimizer.

use debyefit::{fit, Algorithm, FitConfig, HavriliakNegamiParams, PoleCount, RelaxationModel};

fn main() -> debyefit::Result<()> {
    let model = RelaxationModel::HavriliakNegami(HavriliakNegamiParams {
        eps_inf: 2.7,
        delta_eps: 5.9,
        tau0: 9.4e-10,
        alpha: 0.91,
        beta: 0.45,
    });
    let seeds: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let seeds = if seeds.is_empty() { vec![1, 2, 3, 4, 5] } else { seeds };
    for algorithm in Algorithm::ALL {
        for &seed in &seeds {
            let config = FitConfig::new(1e7, 1e11, PoleCount::Fixed(5))
                .with_algorithm(algorithm)
                .with_seed(seed);
            let r = fit(&model, &config)?;
            println!(
                "{algorithm} seed {seed}: err {:.3}% (re {:.3}, im {:.3}) eps_inf {:.4} in {:.3}s, {} iterations",
                r.err_total,
                r.err_real,
                r.err_imag,
                r.expansion.eps_inf(),
                r.duration,
                r.convergence.len() - 1
            );
        }
    }
    Ok(())
}

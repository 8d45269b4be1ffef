//! End-to-end acceptance suite. Runs every criterion, prints one PASS/FAIL
//! line each and exits nonzero if any failed.
//!
//! Run alone with `cargo test --release -p debyefit-cli --test acceptance`.

use std::fs;
use std::time::Instant;

use debyefit::dispersion::{
    eval_crim, eval_debye_pole, eval_havriliak_negami, eval_jonscher, CrimComponent, CrimParams,
    DebyePoleParams,
};
use debyefit::fitter::{cost, solve_weights_dls, target_spectrum};
use debyefit::optim::{da_minimize, de_minimize, pso_minimize};
use debyefit::{
    eval_expansion, fit, make_log_grid, Algorithm, Bounds, ComplexSpectrum, DebyeExpansion,
    DebyePole, FitConfig, HavriliakNegamiParams, JonscherParams, OptimizerSettings, PoleCount,
    RelaxationModel,
};
use debyefit_cli::output::{parse_dispersion_line, parse_material_line};
use debyefit_cli::{parse_command, run_command, CliOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KELLEY_LINE: &str =
    "#havriliak_negami: 1e7 1e11 0.91 0.45 2.7 5.9 9.4e-10 0.1 1 0 5 Kelley";
const F_MIN: f64 = 1e7;
const F_MAX: f64 = 1e11;

type Outcome = Result<String, String>;

fn kelley() -> RelaxationModel {
    RelaxationModel::HavriliakNegami(HavriliakNegamiParams {
        eps_inf: 2.7,
        delta_eps: 5.9,
        tau0: 9.4e-10,
        alpha: 0.91,
        beta: 0.45,
    })
}

fn debye(eps_inf: f64, delta_eps: f64, tau0: f64) -> RelaxationModel {
    RelaxationModel::HavriliakNegami(HavriliakNegamiParams {
        eps_inf,
        delta_eps,
        tau0,
        alpha: 1.0,
        beta: 1.0,
    })
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kelley_benchmark() -> Outcome {
    let mut summary = Vec::new();
    for (algorithm, limit) in [
        (Algorithm::ParticleSwarm, 10.0),
        (Algorithm::DualAnnealing, 6.0),
        (Algorithm::DifferentialEvolution, 6.0),
    ] {
        let mut passed = 0;
        let mut worst = 0.0f64;
        for seed in 1..=5 {
            let cfg = FitConfig::new(F_MIN, F_MAX, PoleCount::Fixed(5))
                .with_algorithm(algorithm)
                .with_seed(seed);
            let r = fit(&kelley(), &cfg).map_err(|e| e.to_string())?;
            worst = worst.max(r.err_total);
            if r.err_total <= limit && r.duration < 60.0 {
                passed += 1;
            }
        }
        check(passed >= 4, || {
            format!("{algorithm}: {passed}/5 seeds within {limit}%")
        })?;
        summary.push(format!("{} {passed}/5 (worst {worst:.2}%)", algorithm.tag()));
    }
    Ok(summary.join(", "))
}

fn exact_recovery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_err = 0.0f64;
    let mut worst_tau = 0.0f64;
    for target in 0..10 {
        let eps_inf = rng.random_range(1.0..=10.0);
        let delta_eps = rng.random_range(0.5..=20.0);
        let f0 = 10f64.powf(rng.random_range(F_MIN.log10()..=F_MAX.log10()));
        let tau = 1.0 / (2.0 * std::f64::consts::PI * f0);
        let model = debye(eps_inf, delta_eps, tau);
        for algorithm in Algorithm::ALL {
            let cfg = FitConfig::new(F_MIN, F_MAX, PoleCount::Fixed(1))
                .with_algorithm(algorithm)
                .with_seed(100 + target);
            let r = fit(&model, &cfg).map_err(|e| e.to_string())?;
            let got = r.expansion.poles()[0].tau;
            let tau_err = (got - tau).abs() / tau;
            check(r.err_total < 0.5 && tau_err < 0.02, || {
                format!(
                    "target {target} ({algorithm}): err {:.4}%, tau {got:e} vs {tau:e}",
                    r.err_total
                )
            })?;
            worst_err = worst_err.max(r.err_total);
            worst_tau = worst_tau.max(tau_err);
        }
    }
    Ok(format!(
        "30 fits, worst err {worst_err:.2e}%, worst tau deviation {:.2e}%",
        100.0 * worst_tau
    ))
}

fn auto_poles() -> Outcome {
    let cfg = FitConfig::new(F_MIN, F_MAX, PoleCount::Auto)
        .with_algorithm(Algorithm::DualAnnealing)
        .with_seed(3);
    let r = fit(&kelley(), &cfg).map_err(|e| e.to_string())?;
    let n = r.expansion.pole_count();
    check(r.err_total < 5.0 && n <= 20, || {
        format!("kelley: N = {n}, err {:.3}%", r.err_total)
    })?;
    let d = fit(&debye(3.0, 8.0, 1e-9), &cfg).map_err(|e| e.to_string())?;
    check(d.expansion.pole_count() == 1, || {
        format!("debye target stopped at N = {}", d.expansion.pole_count())
    })?;
    Ok(format!("kelley N = {n} at {:.3}%, debye N = 1", r.err_total))
}

fn dls_oracle() -> Outcome {
    let grid = make_log_grid(F_MIN, F_MAX, 50).map_err(|e| e.to_string())?;
    let all = [
        (3.2e-9, 4.0),
        (6.1e-10, 1.5),
        (8.0e-11, 2.25),
        (1.3e-11, 0.7),
        (2.0e-12, 3.1),
    ];
    let mut worst = 0.0f64;
    for n in 1..=5 {
        let eps_inf = 1.5 + n as f64;
        let poles = all[..n]
            .iter()
            .map(|&(tau, delta_eps)| DebyePole { delta_eps, tau })
            .collect();
        let exp = DebyeExpansion::new(eps_inf, poles).map_err(|e| e.to_string())?;
        let target = eval_expansion(&exp, &grid);
        let taus: Vec<f64> = exp.poles().iter().map(|p| p.tau).collect();
        let w = solve_weights_dls(&taus, &target).map_err(|e| e.to_string())?;
        check(!w.penalized, || format!("{n} poles: penalized"))?;
        let rel = |got: f64, want: f64| (got - want).abs() / want.abs();
        worst = worst.max(rel(w.eps_inf, eps_inf));
        for (got, pole) in w.deltas.iter().zip(exp.poles()) {
            worst = worst.max(rel(*got, pole.delta_eps));
        }
        check(worst <= 1e-6, || format!("{n} poles: relative error {worst:e}"))?;
    }
    Ok(format!("1-5 poles, worst relative error {worst:.2e}"))
}

fn brute_force() -> Outcome {
    let model = debye(2.0, 6.0, 7e-11);
    let cfg = FitConfig::new(F_MIN, F_MAX, PoleCount::Fixed(1)).with_seed(4);
    let target = target_spectrum(&model, &cfg).map_err(|e| e.to_string())?;
    let r = fit(&model, &cfg).map_err(|e| e.to_string())?;
    let best = cost(&[r.expansion.poles()[0].tau.log10()], &target);
    let (lo, hi) = cfg.log10_tau_range();
    let exhaustive = (0..10_000)
        .map(|i| cost(&[lo + (hi - lo) * i as f64 / 9_999.0], &target))
        .fold(f64::INFINITY, f64::min);
    check(exhaustive >= best - 1e-3, || {
        format!("grid found {exhaustive:e}, optimizer {best:e}")
    })?;
    Ok(format!("optimizer {best:.3e}, grid minimum {exhaustive:.3e}"))
}

fn kelley_round_trip() -> Outcome {
    let mut cmd = parse_command(KELLEY_LINE).map_err(|e| e.to_string())?;
    cmd.seed = Some(7);
    let out = run_command(&cmd, &CliOptions::default()).map_err(|e| e.to_string())?;
    let mat = parse_material_line(&out.material_line)?;
    let disp = parse_dispersion_line(&out.dispersion_line)?;
    check(
        (mat.sigma.as_str(), mat.mu_r.as_str(), mat.mag_loss.as_str()) == ("0.1", "1", "0"),
        || format!("pass-through altered: {}", out.material_line),
    )?;
    check(mat.id == "Kelley" && disp.id == "Kelley", || "identifier lost".into())?;
    check((2.5..=3.2).contains(&mat.eps_inf), || {
        format!("eps_inf {} outside [2.5, 3.2]", mat.eps_inf)
    })?;
    check(disp.poles.len() == 5, || format!("{} poles", disp.poles.len()))?;
    check(disp.poles.iter().all(|&(d, t)| d > 0.0 && t > 0.0), || {
        format!("non-positive pole: {}", out.dispersion_line)
    })?;
    let tokens = out.dispersion_line.split_whitespace().count();
    check(tokens == 2 + 2 * 5 + 1, || format!("{tokens} tokens"))?;
    Ok(out.material_line)
}

fn model_reductions() -> Outcome {
    let grid = make_log_grid(F_MIN, F_MAX, 50).map_err(|e| e.to_string())?;
    let max_rel = |a: &ComplexSpectrum, b: &ComplexSpectrum| {
        a.values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| (x - y).norm() / y.norm())
            .fold(0.0f64, f64::max)
    };

    let hn = HavriliakNegamiParams {
        eps_inf: 3.0,
        delta_eps: 12.0,
        tau0: 2e-10,
        alpha: 1.0,
        beta: 1.0,
    };
    let hn_err = max_rel(
        &eval_havriliak_negami(&hn, &grid).map_err(|e| e.to_string())?,
        &eval_debye_pole(3.0, 12.0, 2e-10, &grid).map_err(|e| e.to_string())?,
    );

    let water = DebyePoleParams {
        eps_inf: 4.9,
        delta_eps: 75.0,
        tau: 9.3e-12,
    };
    let crim = CrimParams {
        shape_a: 0.5,
        components: vec![CrimComponent {
            fraction: 1.0,
            constituent: water,
        }],
    };
    let crim_err = max_rel(
        &eval_crim(&crim, &grid).map_err(|e| e.to_string())?,
        &eval_debye_pole(water.eps_inf, water.delta_eps, water.tau, &grid)
            .map_err(|e| e.to_string())?,
    );

    let jonscher = JonscherParams {
        eps_inf: 5.0,
        a_p: 2.5,
        omega_p: 2.0 * std::f64::consts::PI * 1e9,
        n_p: 0.0,
    };
    let flat = eval_jonscher(&jonscher, &grid).map_err(|e| e.to_string())?;
    let first = flat.values()[0];
    let jonscher_err = flat
        .values()
        .iter()
        .map(|v| (v - first).norm() / first.norm())
        .fold(0.0f64, f64::max);

    let worst = hn_err.max(crim_err).max(jonscher_err);
    check(worst <= 1e-12, || {
        format!("HN {hn_err:e}, CRIM {crim_err:e}, Jonscher {jonscher_err:e}")
    })?;
    Ok(format!("worst relative deviation {worst:.1e}"))
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cmd = parse_command(&format!("{KELLEY_LINE} 42")).map_err(|e| e.to_string())?;
    for algorithm in Algorithm::ALL {
        let runs = ["a", "b"].map(|tag| {
            let options = CliOptions {
                optimizer: algorithm,
                csv_dir: Some(tmp.path().join(format!("{}-{tag}", algorithm.tag()))),
                ..CliOptions::default()
            };
            run_command(&cmd, &options)
        });
        let [a, b] = runs;
        let (a, b) = (a.map_err(|e| e.to_string())?, b.map_err(|e| e.to_string())?);
        check(
            a.material_line == b.material_line && a.dispersion_line == b.dispersion_line,
            || format!("{algorithm}: output lines differ"),
        )?;
        for (pa, pb) in a.csv_paths.iter().zip(&b.csv_paths) {
            let same = fs::read(pa).map_err(|e| e.to_string())?
                == fs::read(pb).map_err(|e| e.to_string())?;
            check(same, || format!("{algorithm}: {} differs", pa.display()))?;
        }
        check(a.csv_paths.len() == 2, || "expected two CSV files".into())?;
    }
    Ok("lines and CSVs identical for pso, de, da".into())
}

fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * (2.0 * std::f64::consts::PI * v).cos())
            .sum::<f64>()
}

fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
        .sum()
}

fn two_basins(x: &[f64]) -> f64 {
    -1.5 * (-(x[0] - 2.0).powi(2) / (2.0 * 0.05f64.powi(2))).exp()
        - (-(x[0] + 1.0).powi(2) / 2.0).exp()
}

fn optimizer_floors() -> Outcome {
    let cube = |d, w: f64| Bounds::uniform(d, -w, w).map_err(|e| e.to_string());
    let settings = |a, iters, pop| {
        OptimizerSettings::new(a)
            .with_max_iterations(iters)
            .with_population(pop)
    };
    let pso = settings(Algorithm::ParticleSwarm, 100, 40);
    let de = settings(Algorithm::DifferentialEvolution, 200, 50);
    let da = OptimizerSettings::new(Algorithm::DualAnnealing).with_max_iterations(1000);

    for seed in 0..5 {
        let b = cube(3, 5.0)?;
        let p = pso_minimize(sphere, &b, &pso.clone().with_seed(seed)).best_cost;
        let e = de_minimize(sphere, &b, &de.clone().with_seed(seed)).best_cost;
        let a = da_minimize(sphere, &b, &da.clone().with_seed(seed)).best_cost;
        check(p < 1e-4 && e < 1e-6 && a < 1e-4, || {
            format!("sphere seed {seed}: pso {p:e}, de {e:e}, da {a:e}")
        })?;
    }

    let b = cube(2, 5.12)?;
    let pso200 = pso.clone().with_max_iterations(200);
    let hits = (0..20)
        .filter(|&s| pso_minimize(rastrigin, &b, &pso200.clone().with_seed(s)).best_cost < 1.0)
        .count();
    check(hits >= 18, || format!("rastrigin {hits}/20"))?;

    let b = cube(2, 5.0)?;
    let de500 = de.clone().with_max_iterations(500);
    for seed in 0..5 {
        let c = de_minimize(rosenbrock, &b, &de500.clone().with_seed(seed)).best_cost;
        check(c < 1e-2, || format!("rosenbrock seed {seed}: {c:e}"))?;
    }

    let b = cube(1, 4.0)?;
    let deep = (0..20)
        .filter(|&s| (da_minimize(two_basins, &b, &da.clone().with_seed(s)).best_point[0] - 2.0).abs() < 0.2)
        .count();
    check(deep >= 16, || format!("two-basin {deep}/20"))?;

    Ok(format!("sphere 5/5 each, rastrigin {hits}/20, rosenbrock 5/5, two-basin {deep}/20"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Kelley benchmark", kelley_benchmark),
        ("exact-model recovery", exact_recovery),
        ("auto-pole loop", auto_poles),
        ("weight solve against known expansions", dls_oracle),
        ("brute-force tau check", brute_force),
        ("Kelley command round trip", kelley_round_trip),
        ("model reductions", model_reductions),
        ("determinism", determinism),
        ("optimizer benchmarks", optimizer_floors),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}) [{secs:.1} s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({detail}) [{secs:.1} s]", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

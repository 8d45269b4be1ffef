use std::f64::consts::PI;

use debyefit::dispersion::{
    eval_crim, eval_debye_pole, eval_havriliak_negami, eval_jonscher, CrimComponent, CrimParams,
    DebyePoleParams, HavriliakNegamiParams, JonscherParams,
};
use debyefit::{make_log_grid, FrequencyGrid};
use num_complex::Complex64;
use proptest::prelude::*;

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn band() -> impl Strategy<Value = (f64, f64)> {
    (5.0f64..9.0, 1.0f64..4.0).prop_map(|(lo, span)| (10f64.powf(lo), 10f64.powf(lo + span)))
}

prop_compose! {
    fn hn_params()(eps_inf in 1.0f64..10.0, delta in 0.1f64..50.0, log_tau in -12.0f64..-7.0,
                   alpha in 0.05f64..=1.0, beta in 0.05f64..=1.0) -> HavriliakNegamiParams {
        HavriliakNegamiParams { eps_inf, delta_eps: delta, tau0: 10f64.powf(log_tau), alpha, beta }
    }
}

proptest! {
    #[test]
    fn hn_with_unit_exponents_is_debye(p in hn_params(), (lo, hi) in band(), n in 2usize..80) {
        let grid = make_log_grid(lo, hi, n).unwrap();
        let hn = HavriliakNegamiParams { alpha: 1.0, beta: 1.0, ..p };
        let a = eval_havriliak_negami(&hn, &grid).unwrap();
        let b = eval_debye_pole(p.eps_inf, p.delta_eps, p.tau0, &grid).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!(rel(*x, *y) < 1e-12);
        }
    }

    #[test]
    fn cole_cole_and_cole_davidson_are_continuous_at_one(p in hn_params()) {
        let grid = make_log_grid(1e6, 1e12, 40).unwrap();
        let cole_cole = |alpha| HavriliakNegamiParams { alpha, beta: 1.0, ..p };
        let cole_davidson = |beta| HavriliakNegamiParams { alpha: 1.0, beta, ..p };
        for (near, at) in [
            (cole_cole(1.0 - 1e-9), cole_cole(1.0)),
            (cole_davidson(1.0 - 1e-9), cole_davidson(1.0)),
        ] {
            let a = eval_havriliak_negami(&near, &grid).unwrap();
            let b = eval_havriliak_negami(&at, &grid).unwrap();
            for (x, y) in a.values().iter().zip(b.values()) {
                prop_assert!(rel(*x, *y) < 1e-6);
            }
        }
    }

    /// With the relaxation inside the band and αβ ≥ 0.5, six decades beyond
    /// each edge reach the static and optical limits.
    #[test]
    fn hn_asymptotes(eps_inf in 1.0f64..10.0, delta in 0.1f64..50.0, alpha in 0.71f64..=1.0,
                     beta in 0.71f64..=1.0, pos in 0.0f64..1.0) {
        let (f_min, f_max) = (1e7, 1e11);
        let f0 = 10f64.powf(7.0 + 4.0 * pos);
        let p = HavriliakNegamiParams { eps_inf, delta_eps: delta, tau0: 1.0 / (2.0 * PI * f0), alpha, beta };
        let grid = FrequencyGrid::new(vec![2.0 * PI * f_min * 1e-6, 2.0 * PI * f_max * 1e6]).unwrap();
        let s = eval_havriliak_negami(&p, &grid).unwrap();
        prop_assert!((s.values()[1] - eps_inf).norm() < 1e-3 * delta);
        prop_assert!((s.values()[0] - p.eps_static()).norm() < 1e-3 * delta);
    }

    #[test]
    fn losses_are_nonnegative(p in hn_params(), water_frac in 0.01f64..0.99, a in 0.1f64..1.0) {
        let grid = make_log_grid(1e6, 1e12, 60).unwrap();
        let hn = eval_havriliak_negami(&p, &grid).unwrap();
        prop_assert!(hn.losses().all(|l| l >= 0.0));
        let debye = eval_debye_pole(p.eps_inf, p.delta_eps, p.tau0, &grid).unwrap();
        prop_assert!(debye.losses().all(|l| l >= 0.0));
        let crim = CrimParams {
            shape_a: a,
            components: vec![
                CrimComponent { fraction: water_frac, constituent: DebyePoleParams { eps_inf: 4.9, delta_eps: 75.0, tau: 9.2e-12 } },
                CrimComponent { fraction: 1.0 - water_frac, constituent: DebyePoleParams { eps_inf: p.eps_inf, delta_eps: p.delta_eps, tau: p.tau0 } },
            ],
        };
        let mix = eval_crim(&crim, &grid).unwrap();
        prop_assert!(mix.losses().all(|l| l >= 0.0));
    }

    #[test]
    fn jonscher_loss_is_monotone(eps_inf in 1.0f64..10.0, a_p in 0.1f64..10.0, n_p in 0.01f64..0.99,
                                 log_wp in 6.0f64..11.0) {
        let p = JonscherParams { eps_inf, a_p, omega_p: 10f64.powf(log_wp), n_p };
        let grid = make_log_grid(1e5, 1e12, 60).unwrap();
        let s = eval_jonscher(&p, &grid).unwrap();
        let losses: Vec<f64> = s.losses().collect();
        prop_assert!(losses.windows(2).all(|w| w[1] > w[0]));
    }
}

#[test]
fn debye_loss_peak_sits_at_relaxation_frequency() {
    // εs = 15, ε∞ = 1, τ = 0.1 ns: the single-pole example spectrum
    let tau = 1e-10;
    let f0 = 1.0 / (2.0 * PI * tau);
    assert!((f0 / 1e9 - 1.5915).abs() < 1e-4);
    let mut gaps = Vec::new();
    for n in [11, 51, 201, 1001] {
        let grid = make_log_grid(1e7, 1e12, n).unwrap();
        let s = eval_debye_pole(1.0, 14.0, tau, &grid).unwrap();
        let (peak, max) = s
            .losses()
            .enumerate()
            .fold((0, f64::MIN), |acc, (i, l)| if l > acc.1 { (i, l) } else { acc });
        let nearest = grid
            .omegas()
            .iter()
            .enumerate()
            .min_by(|a, b| {
                let da = (a.1 * tau).ln().abs();
                let db = (b.1 * tau).ln().abs();
                da.partial_cmp(&db).unwrap()
            })
            .unwrap()
            .0;
        assert_eq!(peak, nearest, "n = {n}");
        assert!(max <= 7.0 + 1e-12);
        gaps.push(7.0 - max);
    }
    assert!(gaps.windows(2).all(|w| w[1] <= w[0]), "{gaps:?}");
    assert!(gaps[3] < 1e-4);
}

#[test]
fn model_reductions_on_standard_grid() {
    let grid = make_log_grid(1e7, 1e11, 50).unwrap();
    let water = DebyePoleParams { eps_inf: 4.9, delta_eps: 75.0, tau: 9.2e-12 };
    let crim = CrimParams {
        shape_a: 0.5,
        components: vec![CrimComponent { fraction: 1.0, constituent: water }],
    };
    let mix = eval_crim(&crim, &grid).unwrap();
    let pure = eval_debye_pole(water.eps_inf, water.delta_eps, water.tau, &grid).unwrap();
    for (x, y) in mix.values().iter().zip(pure.values()) {
        assert!(rel(*x, *y) < 1e-12);
    }
    let flat = eval_jonscher(
        &JonscherParams { eps_inf: 3.0, a_p: 1.5, omega_p: 2.0 * PI * 1e9, n_p: 0.0 },
        &grid,
    )
    .unwrap();
    let first = flat.values()[0];
    assert!(flat.values().iter().all(|v| rel(*v, first) < 1e-12));
}

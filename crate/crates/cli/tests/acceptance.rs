//! Acceptance suite: eight checks covering the whole laboratory, each
//! printing exactly one `PASS n:` or `FAIL n:` line (run with
//! `cargo test --test acceptance -- --nocapture` to see them). Tolerances
//! and runtime budgets are pinned in the assertions.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand_core::RngCore;

use qpow::econ::{ChainParams, Market, MinerSpec};
use qpow::forecast::{self, GrowthModel};
use qpow::grover::{self, PowInstance, ToyHash};
use qpow::rng;
use qpow::sim::{AdoptionRule, SimConfig, Simulation, SimMode};

fn criterion(n: u32, description: &str, check: impl FnOnce() + UnwindSafe) {
    match catch_unwind(check) {
        Ok(()) => println!("PASS {n}: {description}"),
        Err(cause) => {
            println!("FAIL {n}: {description}");
            resume_unwind(cause);
        }
    }
}

fn qpow_stdout(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_qpow"))
        .args(args)
        .output()
        .expect("binary should launch");
    assert!(
        out.status.success(),
        "qpow {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout should be UTF-8")
}

#[test]
fn criterion_1_break_even_table() {
    criterion(
        1,
        "default break-even table matches the reference within 0.1% in under 1 s",
        || {
            let reference: [f64; 8] = [
                6258.27, 2761.51, 8242.92, 26590.06, 100132.28, 44184.12, 131886.68, 425440.90,
            ];
            let started = Instant::now();
            let csv = qpow_stdout(&["table1"]);
            let values: Vec<f64> = csv
                .lines()
                .skip(1)
                .map(|line| line.split(',').nth(2).unwrap().parse().unwrap())
                .collect();
            assert_eq!(values.len(), 8);
            for (got, expected) in values.iter().zip(&reference) {
                let relative = (got - expected).abs() / expected;
                assert!(relative < 1e-3, "{got} vs {expected} ({relative:.2e})");
            }
            assert!(started.elapsed() < Duration::from_secs(1));
        },
    );
}

#[test]
fn criterion_2_equivalent_rate() {
    criterion(
        2,
        "a 4e7 Hz clock over a 1 s window is exactly 1.6e15 H/s equivalent",
        || {
            assert_eq!(forecast::equivalent_hash_rate(4.0e7, 1.0).unwrap(), 1.6e15);
            assert_eq!(
                forecast::equivalent_hash_rate(6.4e8, 1.0).unwrap(),
                4.096e17
            );
        },
    );
}

#[test]
fn criterion_3_crossover() {
    criterion(
        3,
        "51% crossover hits the closed form, lands at 27.1 +/- 0.5 years, and both low-rate presets are already crossed",
        || {
            let network = GrowthModel::linear(130e18, 1.66);
            let quantum = GrowthModel::quadratic(4.0e7, 1.66);
            let result = forecast::crossover_time(&network, &quantum, 1.0, 1.0).unwrap();
            assert!(!result.already_crossed);

            let closed_form = 1.66 * (130e18f64 / 1.6e15).log2();
            assert!(
                (result.years_until_crossover - closed_form).abs() <= 1e-9,
                "{} vs {closed_form}",
                result.years_until_crossover
            );
            assert!((result.years_until_crossover - 27.1).abs() <= 0.5);

            // series brackets the crossover within one step
            let last = result.series.last().unwrap();
            let prior = &result.series[result.series.len() - 2];
            assert!(last.quantum_equivalent_hps >= last.network_rate_hps);
            assert!(prior.quantum_equivalent_hps < prior.network_rate_hps);
            assert!(last.year - result.years_until_crossover <= 1.0);

            for preset in ["monero", "etc"] {
                let csv = qpow_stdout(&["crossover", "--preset", preset]);
                assert_eq!(
                    csv.lines().last(),
                    Some("already_crossed=true"),
                    "{preset}"
                );
            }
        },
    );
}

#[test]
fn criterion_4_grover_suite() {
    criterion(
        4,
        "simulated Grover success tracks the closed form to 1e-9, the 1024-slot instance clears 0.999 in 25 queries, and queries double as N quadruples",
        || {
            let started = Instant::now();

            let mut rng = rng::rng_from_seed(0x9e3779b9);
            for n_bits in 2..=12u32 {
                for _ in 0..2 {
                    let header = rng.next_u32();
                    let hash = ToyHash::new(header, n_bits).unwrap();
                    let anchor = (rng.next_u32()) & (hash.space_size() as u32 - 1);
                    let target = hash.digest(anchor).unwrap();
                    let instance = PowInstance::new(hash, target).unwrap();
                    let k_star = grover::optimal_iterations(instance.n(), instance.m()).unwrap();
                    for k in [0, k_star / 2, k_star, 2 * k_star] {
                        let outcome = grover::grover_search(&instance, k).unwrap();
                        let analytic =
                            grover::analytic_success_probability(instance.n(), instance.m(), k)
                                .unwrap();
                        assert!(
                            (outcome.success_probability - analytic).abs() < 1e-9,
                            "n={n_bits} m={} k={k}: {} vs {analytic}",
                            instance.m(),
                            outcome.success_probability
                        );
                        assert_eq!(outcome.queries_used, k);
                    }
                }
            }

            // frozen single-solution instance over 1024 nonces
            let instance = PowInstance::new(ToyHash::new(0, 10).unwrap(), 0).unwrap();
            assert_eq!(instance.m(), 1);
            let outcome = grover::grover_search(&instance, 25).unwrap();
            assert!(outcome.success_probability >= 0.999);
            assert_eq!(outcome.queries_used, 25);

            let ladder: Vec<u64> = [8u32, 10, 12, 14, 16]
                .iter()
                .map(|&n| grover::optimal_iterations(1 << n, 1).unwrap())
                .collect();
            for pair in ladder.windows(2) {
                let ratio = pair[1] as f64 / pair[0] as f64;
                assert!((1.9..=2.1).contains(&ratio), "{ladder:?}");
            }

            assert!(started.elapsed() < Duration::from_secs(30));
        },
    );
}

#[test]
fn criterion_5_chain_fixed_points() {
    criterion(
        5,
        "classical-only retargeting lands on target after one step; an all-quantum chain reaches (H t^2 / eta)^2 within 1% in 10 epochs",
        || {
            let started = Instant::now();

            let chain = ChainParams::btc_2025();
            let cfg = SimConfig {
                chain: chain.clone(),
                miners: vec![MinerSpec::classical(4.0e12)],
                market: Market::new(23536.12),
                mode: SimMode::Deterministic,
                seed: 0,
                epochs: 4,
                adoption: None,
                clamp_factor: None,
            };
            let stats = qpow::sim::run_simulation(cfg).unwrap();
            let target = chain.retarget_target_s();
            for epoch in &stats[1..] {
                let relative = (epoch.elapsed_s - target).abs() / target;
                assert!(relative < 1e-6, "epoch {}: {relative:.2e}", epoch.epoch_index);
            }

            let quantum_chain = ChainParams {
                difficulty: 1e6,
                ..ChainParams::btc_2025()
            };
            let d_star = (4.0e7 * 600.0 * 600.0 / 4294967296.0f64).powi(2);
            assert!((d_star - 1.1239e7).abs() / 1.1239e7 < 1e-2);
            let cfg = SimConfig {
                chain: quantum_chain,
                miners: vec![MinerSpec::quantum(4.0e7)],
                market: Market::new(23536.12),
                mode: SimMode::Deterministic,
                seed: 0,
                epochs: 10,
                adoption: None,
                clamp_factor: None,
            };
            let mut sim = Simulation::new(cfg).unwrap();
            for _ in 0..10 {
                sim.run_epoch().unwrap();
            }
            let relative = (sim.difficulty() - d_star).abs() / d_star;
            assert!(relative < 1e-2, "{} vs {d_star} ({relative:.2e})", sim.difficulty());

            assert!(started.elapsed() < Duration::from_secs(5));
        },
    );
}

#[test]
fn criterion_6_feedback_cycle() {
    criterion(
        6,
        "with a profitable quantum template the adoption loop keeps difficulty and quantum rate share non-decreasing",
        || {
            let started = Instant::now();
            let cfg = SimConfig {
                chain: ChainParams {
                    difficulty: 1e6,
                    ..ChainParams::btc_2025()
                },
                miners: vec![MinerSpec::classical(1.0e9), MinerSpec::quantum(4.0e7)],
                market: Market::new(23536.12),
                mode: SimMode::Deterministic,
                seed: 0,
                epochs: 12,
                adoption: Some(AdoptionRule {
                    threshold_g: 1.0,
                    miners_per_trigger: 1,
                    template: MinerSpec::quantum(4.0e7),
                }),
                clamp_factor: None,
            };
            let stats = qpow::sim::run_simulation(cfg).unwrap();
            assert!(stats[0].profit_ratio_g.unwrap() < 1.0, "template must be profitable");
            for pair in stats.windows(2) {
                assert!(pair[1].difficulty_start >= pair[0].difficulty_start);
                assert!(pair[1].quantum_rate_share >= pair[0].quantum_rate_share);
            }
            assert!(
                stats.last().unwrap().quantum_rate_share > stats[0].quantum_rate_share,
                "the cycle should actually advance"
            );
            assert!(started.elapsed() < Duration::from_secs(5));
        },
    );
}

#[test]
fn criterion_7_manifest_determinism() {
    criterion(
        7,
        "simulate and grover runs replayed from their manifests are byte-identical",
        || {
            let dir = tempfile::tempdir().unwrap();
            let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();

            let cfg = path("sim.txt");
            std::fs::write(
                &cfg,
                "miner.0.kind = classical\nminer.0.rate = 4e12\nminer.1.kind = quantum\nminer.1.rate = 4e7\nchain.difficulty = 1e8\nsim.mode = stochastic\nsim.epochs = 5\nseed = 3\n",
            )
            .unwrap();
            let first = path("a.csv");
            qpow_stdout(&["simulate", "--config", &cfg, "--out", &first]);
            let second = path("b.csv");
            qpow_stdout(&[
                "simulate",
                "--config",
                &path("a.csv.manifest"),
                "--out",
                &second,
            ]);
            assert_eq!(
                std::fs::read(&first).unwrap(),
                std::fs::read(&second).unwrap()
            );

            let g_first = path("g.txt");
            qpow_stdout(&["grover", "--n-bits", "12", "--header", "1", "--out", &g_first]);
            let g_second = path("h.txt");
            qpow_stdout(&[
                "grover",
                "--config",
                &path("g.txt.manifest"),
                "--out",
                &g_second,
            ]);
            assert_eq!(
                std::fs::read(&g_first).unwrap(),
                std::fs::read(&g_second).unwrap()
            );
        },
    );
}

#[test]
fn criterion_8_polynomial_fit() {
    criterion(
        8,
        "polynomial fit recovers noiseless data exactly and extrapolates 0.1%-noise difficulty history within 1%",
        || {
            let c = [2.0e18, 1.5e17, 2.0e16];
            let poly = |x: f64| c[0] + c[1] * x + c[2] * x * x;

            let clean: Vec<(f64, f64)> = (0..12).map(|i| (i as f64, poly(i as f64))).collect();
            let fit = forecast::fit_polynomial(&clean, 2).unwrap();
            for (got, expected) in fit.coefficients.iter().zip(&c) {
                assert!((got - expected).abs() / expected <= 1e-9);
            }
            assert!(fit.residual_rms / c[0] <= 1e-9);
            let at = 20.0;
            let value = forecast::extrapolate_difficulty(&fit, at).unwrap();
            assert!((value - poly(at)).abs() / poly(at) <= 1e-9);

            let mut rng = rng::rng_from_seed(2718);
            let noisy: Vec<(f64, f64)> = (0..17)
                .map(|i| {
                    let x = i as f64 * 0.5;
                    let jitter = 1.0 + 0.001 * (2.0 * rng::uniform_f64(&mut rng) - 1.0);
                    (x, poly(x) * jitter)
                })
                .collect();
            let fit = forecast::fit_polynomial(&noisy, 2).unwrap();
            let held_out = 10.0;
            let predicted = forecast::extrapolate_difficulty(&fit, held_out).unwrap();
            let relative = (predicted - poly(held_out)).abs() / poly(held_out);
            assert!(relative <= 1e-2, "held-out error {relative:.2e}");
        },
    );
}

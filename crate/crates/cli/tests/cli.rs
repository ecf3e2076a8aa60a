//! End-to-end tests of the `qpow` binary: output formats, resolution
//! precedence, exit codes, and manifest replay.

use std::path::Path;
use std::process::{Command, Output};

fn qpow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpow"))
        .args(args)
        .output()
        .expect("binary should launch")
}

/// Runs the binary, asserts exit 0, and returns stdout.
fn stdout_of(args: &[&str]) -> String {
    let out = qpow(args);
    assert!(
        out.status.success(),
        "qpow {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout should be UTF-8")
}

/// Asserts the exit code and returns stderr.
fn failure_of(args: &[&str], expected_code: i32) -> String {
    let out = qpow(args);
    assert_eq!(
        out.status.code(),
        Some(expected_code),
        "qpow {args:?}\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stderr).expect("stderr should be UTF-8")
}

/// Value of a `key = value` report line.
fn field<'a>(report: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key} = ");
    report
        .lines()
        .find_map(|line| line.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no '{key}' line in:\n{report}"))
}

fn field_f64(report: &str, key: &str) -> f64 {
    field(report, key).parse().expect("numeric field")
}

/// Cell `col` of 1-based data row `row` (row 0 is the header).
fn csv_cell(csv: &str, row: usize, col: usize) -> &str {
    csv.lines()
        .nth(row)
        .unwrap_or_else(|| panic!("no row {row} in:\n{csv}"))
        .split(',')
        .nth(col)
        .unwrap_or_else(|| panic!("no column {col} in row {row} of:\n{csv}"))
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).expect("write test file");
}

trait PathStr {
    fn path_str(&self) -> &str;
}

impl PathStr for std::path::PathBuf {
    fn path_str(&self) -> &str {
        self.to_str().expect("temp paths are UTF-8")
    }
}

#[test]
fn profit_reproduces_the_reference_quantum_income() {
    let report = stdout_of(&["profit", "--quantum-rate", "4e7"]);
    let income = field_f64(&report, "quantum.income_usd");
    assert!(
        (income - 6258.27).abs() / 6258.27 < 1e-3,
        "income {income}"
    );
    assert_eq!(field(&report, "quantum.block_probability"), "1.61867e-6");
    assert_eq!(field(&report, "years"), "1");
}

#[test]
fn profit_with_both_kinds_reports_g() {
    let report = stdout_of(&[
        "profit",
        "--classical-rate",
        "4e12",
        "--quantum-rate",
        "4e7",
    ]);
    let g = field_f64(&report, "profit_ratio_g");
    assert!(g > 0.0 && g < 1.0, "quantum should win here, G = {g}");
    assert!(field(&report, "profit_ratio_g").contains('e'));
}

#[test]
fn profit_usd_fields_have_two_decimals() {
    let report = stdout_of(&["profit", "--quantum-rate", "4e7", "--reward", "0"]);
    assert_eq!(field(&report, "quantum.income_usd"), "0.00");
    assert_eq!(field(&report, "quantum.profit_usd"), "0.00");
}

#[test]
fn profit_without_any_miner_is_a_usage_error() {
    let err = failure_of(&["profit"], 2);
    assert!(err.contains("--classical-rate"), "{err}");
}

#[test]
fn profit_cost_flag_without_rate_is_a_usage_error() {
    failure_of(&["profit", "--quantum-opex", "5"], 2);
}

#[test]
fn profit_rejects_nonpositive_rates() {
    let err = failure_of(&["profit", "--quantum-rate=0"], 2);
    assert!(err.contains("rate"), "{err}");
}

#[test]
fn table1_default_grid_is_eight_rows_within_tolerance() {
    let reference: [f64; 8] = [
        6258.27, 2761.51, 8242.92, 26590.06, 100132.28, 44184.12, 131886.68, 425440.90,
    ];
    let csv = stdout_of(&["table1"]);
    assert_eq!(
        csv.lines().next(),
        Some("h_q_hs,f_usd,break_even_opex_usd")
    );
    assert_eq!(csv.lines().count(), 9);
    for (i, expected) in reference.iter().enumerate() {
        let got: f64 = csv_cell(&csv, i + 1, 2).parse().unwrap();
        assert!(
            (got - expected).abs() / expected < 1e-3,
            "row {i}: {got} vs {expected}"
        );
    }
}

#[test]
fn table1_single_overrides_give_one_row() {
    let csv = stdout_of(&["table1", "--rates", "4e7", "--frates", "100000"]);
    assert_eq!(csv.lines().count(), 2);
    assert_eq!(csv_cell(&csv, 1, 0), "40000000");
    assert_eq!(csv_cell(&csv, 1, 1), "100000");
}

#[test]
fn crossover_defaults_land_near_27_years() {
    let csv = stdout_of(&["crossover"]);
    assert_eq!(
        csv.lines().next(),
        Some("year,network_hs,quantum_equivalent_hs")
    );
    let summary = csv.lines().last().unwrap();
    let years: f64 = summary
        .strip_prefix("crossover_years=")
        .expect("summary line")
        .parse()
        .unwrap();
    assert!((years - 27.1).abs() < 0.5, "{years}");
    assert_eq!(csv_cell(&csv, 1, 0), "0");
}

#[test]
fn crossover_presets_report_already_crossed() {
    for preset in ["monero", "etc"] {
        let csv = stdout_of(&["crossover", "--preset", preset]);
        assert_eq!(csv.lines().last(), Some("already_crossed=true"), "{preset}");
    }
}

#[test]
fn crossover_rejects_nonpositive_network_rate() {
    failure_of(&["crossover", "--network=-5"], 2);
}

#[test]
fn crossover_horizon_truncates_the_series() {
    let csv = stdout_of(&["crossover", "--horizon", "3"]);
    // header + years 0..=3 + summary
    assert_eq!(csv.lines().count(), 6);
    assert!(csv.lines().last().unwrap().starts_with("crossover_years="));
}

#[test]
fn unknown_preset_is_a_usage_error() {
    let err = failure_of(&["crossover", "--preset", "dogecoin"], 2);
    assert!(err.contains("dogecoin"), "{err}");
}

#[test]
fn grover_default_instance_has_one_solution_in_1024() {
    let report = stdout_of(&["grover"]);
    assert_eq!(field(&report, "n"), "1024");
    assert_eq!(field(&report, "m"), "1");
    assert_eq!(field(&report, "k_star"), "25");
    assert_eq!(field(&report, "grover_queries"), "25");
    assert_eq!(field(&report, "classical_expected"), "1024");
    assert_eq!(field(&report, "verify_ops"), "1");
    assert!(field_f64(&report, "success_probability") >= 0.999);
}

#[test]
fn grover_two_bit_instance_is_certain() {
    let report = stdout_of(&["grover", "--n-bits", "2", "--header", "2", "--target", "0"]);
    assert_eq!(field(&report, "success_probability"), "1.000000000");
}

#[test]
fn grover_over_capacity_is_a_usage_error() {
    let err = failure_of(&["grover", "--n-bits", "25"], 2);
    assert!(err.contains("amplitude slots"), "{err}");
}

#[test]
fn grover_without_solutions_exits_3() {
    let err = failure_of(
        &["grover", "--n-bits", "8", "--header", "8", "--target", "0"],
        3,
    );
    assert!(err.contains("no solutions under target"), "{err}");
}

#[test]
fn simulate_without_miners_is_a_usage_error() {
    let err = failure_of(&["simulate"], 2);
    assert!(err.contains("miner"), "{err}");
}

#[test]
fn simulate_equilibrium_holds_difficulty_constant() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("eq.txt");
    // classical-only fixed point: D = t^2 * H / eta
    let d_star = 600.0f64.powi(2) * 4e12 / 4294967296.0;
    write(
        &cfg,
        &format!(
            "chain.difficulty = {d_star}\nminer.0.kind = classical\nminer.0.rate = 4e12\nsim.epochs = 5\n"
        ),
    );
    let csv = stdout_of(&["simulate", "--config", cfg.path_str()]);
    let first: f64 = csv_cell(&csv, 1, 1).parse().unwrap();
    for row in 2..=5 {
        let d: f64 = csv_cell(&csv, row, 1).parse().unwrap();
        assert!((d - first).abs() / first < 1e-9, "row {row}: {d} vs {first}");
    }
}

#[test]
fn simulate_is_deterministic_for_a_fixed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sim.txt");
    write(
        &cfg,
        "miner.0.kind = classical\nminer.0.rate = 4e12\nminer.1.kind = quantum\nminer.1.rate = 4e7\nchain.difficulty = 1e8\nsim.epochs = 4\n",
    );
    let args = [
        "simulate",
        "--config",
        cfg.path_str(),
        "--mode",
        "stochastic",
        "--seed",
        "42",
    ];
    assert_eq!(stdout_of(&args), stdout_of(&args));

    let other = stdout_of(&[
        "simulate",
        "--config",
        cfg.path_str(),
        "--mode",
        "stochastic",
        "--seed",
        "43",
    ]);
    assert_ne!(stdout_of(&args), other, "different seeds, same trajectory");
}

#[test]
fn simulate_flag_overrides_config_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sim.txt");
    write(
        &cfg,
        "seed = 1\nsim.mode = stochastic\nchain.difficulty = 1e8\nminer.0.kind = quantum\nminer.0.rate = 4e7\nsim.epochs = 3\n",
    );
    let with_flag = stdout_of(&["simulate", "--config", cfg.path_str(), "--seed", "2"]);
    write(
        &cfg,
        "seed = 2\nsim.mode = stochastic\nchain.difficulty = 1e8\nminer.0.kind = quantum\nminer.0.rate = 4e7\nsim.epochs = 3\n",
    );
    let from_config = stdout_of(&["simulate", "--config", cfg.path_str()]);
    assert_eq!(with_flag, from_config);
}

#[test]
fn simulate_g_column_is_nan_without_both_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("one.txt");
    write(
        &cfg,
        "miner.0.kind = classical\nminer.0.rate = 4e12\nsim.epochs = 1\n",
    );
    let csv = stdout_of(&["simulate", "--config", cfg.path_str()]);
    assert_eq!(csv_cell(&csv, 1, 6), "nan");
}

#[test]
fn simulate_rejects_duplicate_mode_flags() {
    failure_of(
        &["simulate", "--mode", "deterministic", "--mode", "stochastic"],
        2,
    );
}

#[test]
fn simulate_manifest_replays_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sim.txt");
    write(
        &cfg,
        "miner.0.kind = classical\nminer.0.rate = 4e12\nminer.1.kind = quantum\nminer.1.rate = 4e7\nchain.difficulty = 1e8\nsim.epochs = 4\nsim.mode = stochastic\nseed = 11\nadoption.threshold = 1\nadoption.template.rate = 4e7\n",
    );
    let first = dir.path().join("a.csv");
    stdout_of(&[
        "simulate",
        "--config",
        cfg.path_str(),
        "--out",
        first.path_str(),
    ]);
    let manifest = dir.path().join("a.csv.manifest");
    assert!(manifest.exists());

    let second = dir.path().join("b.csv");
    stdout_of(&[
        "simulate",
        "--config",
        manifest.path_str(),
        "--out",
        second.path_str(),
    ]);
    let a = std::fs::read(&first).unwrap();
    let b = std::fs::read(&second).unwrap();
    assert_eq!(a, b);
    assert!(!a.is_empty());
}

#[test]
fn grover_manifest_replays_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("g.txt");
    stdout_of(&[
        "grover",
        "--n-bits",
        "12",
        "--header",
        "1",
        "--seed",
        "5",
        "--out",
        first.path_str(),
    ]);
    let manifest = dir.path().join("g.txt.manifest");
    let second = dir.path().join("h.txt");
    stdout_of(&[
        "grover",
        "--config",
        manifest.path_str(),
        "--out",
        second.path_str(),
    ]);
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap()
    );
}

#[test]
fn out_flag_writes_file_and_leaves_stdout_empty() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let stdout = stdout_of(&["table1", "--out", out.path_str()]);
    assert!(stdout.is_empty());
    let body = std::fs::read_to_string(&out).unwrap();
    assert!(body.starts_with("h_q_hs,"));
    let manifest = std::fs::read_to_string(dir.path().join("t.csv.manifest")).unwrap();
    assert!(manifest.contains("subcommand = table1"));
    assert!(manifest.contains("rng = chacha8-invcdf-exp53"));
}

#[test]
fn config_errors_cite_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.txt");
    write(&cfg, "seed = 1\n# fine\nchain.t == 600\n");
    let err = failure_of(&["profit", "--quantum-rate", "4e7", "--config", cfg.path_str()], 2);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn config_value_errors_cite_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.txt");
    write(&cfg, "chain.t = sixhundred\n");
    let err = failure_of(&["profit", "--quantum-rate", "4e7", "--config", cfg.path_str()], 2);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn missing_config_file_is_a_usage_error() {
    failure_of(
        &["profit", "--quantum-rate", "4e7", "--config", "/nonexistent/qpow.txt"],
        2,
    );
}

#[test]
fn extrapolate_recovers_an_exact_quadratic() {
    let dir = tempfile::tempdir().unwrap();
    let history = dir.path().join("h.csv");
    let mut csv = String::from("x,y\n");
    for i in 0..6 {
        let x = i as f64;
        csv.push_str(&format!("{x},{}\n", 2.0 + 3.0 * x + 0.5 * x * x));
    }
    write(&history, &csv);
    let report = stdout_of(&[
        "extrapolate",
        "--history",
        history.path_str(),
        "--degree",
        "2",
        "--at",
        "10",
    ]);
    assert_eq!(field(&report, "degree"), "2");
    let expected = 2.0 + 3.0 * 10.0 + 0.5 * 100.0;
    assert!((field_f64(&report, "extrapolated") - expected).abs() < 1e-6);
    let coeffs: Vec<f64> = field(&report, "coefficients")
        .split(',')
        .map(|c| c.parse().unwrap())
        .collect();
    assert_eq!(coeffs.len(), 3);
    assert!((coeffs[0] - 2.0).abs() < 1e-9);
    assert!((coeffs[1] - 3.0).abs() < 1e-9);
    assert!((coeffs[2] - 0.5).abs() < 1e-9);
}

#[test]
fn extrapolate_underdetermined_fit_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let history = dir.path().join("h.csv");
    write(&history, "x,y\n0,1\n1,2\n");
    let err = failure_of(
        &[
            "extrapolate",
            "--history",
            history.path_str(),
            "--degree",
            "2",
            "--at",
            "5",
        ],
        2,
    );
    assert!(err.contains("degree-2"), "{err}");
}

#[test]
fn extrapolate_to_a_nonpositive_value_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let history = dir.path().join("h.csv");
    write(&history, "x,y\n0,10\n1,8\n2,6\n3,4\n");
    failure_of(
        &[
            "extrapolate",
            "--history",
            history.path_str(),
            "--degree",
            "1",
            "--at",
            "50",
        ],
        3,
    );
}

#[test]
fn extrapolate_csv_errors_cite_row_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let history = dir.path().join("h.csv");
    write(&history, "x,y\n0,1\n0,2\n");
    let err = failure_of(
        &[
            "extrapolate",
            "--history",
            history.path_str(),
            "--degree",
            "1",
            "--at",
            "5",
        ],
        2,
    );
    assert!(err.contains("row 3"), "{err}");
}

#[test]
fn extrapolate_without_history_is_a_usage_error() {
    let err = failure_of(&["extrapolate", "--degree", "1", "--at", "5"], 2);
    assert!(err.contains("--history"), "{err}");
}

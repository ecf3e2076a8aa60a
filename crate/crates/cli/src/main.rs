//! `qpow`: command-line front end for the mining-economics, forecasting,
//! chain-simulation, and Grover engines.
//!
//! Every value a subcommand needs resolves through the same chain: explicit
//! flag, then `--config` file, then `--preset`, then built-in default. When
//! `--out` is given, the output file is accompanied by `<name>.manifest`,
//! a config-format record of the fully resolved run that reproduces the
//! output byte for byte when passed back as `--config`.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage or parse problem,
//! 3 declared domain outcome (no solutions under target, non-positive
//! extrapolation).

mod config;
mod fail;
mod series;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use qpow::econ::{self, ChainParams, Market, MinerKind, MinerSpec};
use qpow::forecast::{self, GrowthModel};
use qpow::grover::{self, PowInstance, ToyHash};
use qpow::sim::{self, AdoptionRule, SimConfig, SimMode};

use config::{write_output, Manifest, Settings};
use fail::Failure;

#[derive(Parser)]
#[command(
    name = "qpow",
    version,
    about = "Desk-scale laboratory for quantum advantage in proof-of-work mining"
)]
struct Cli {
    /// RNG seed for stochastic runs.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Configuration file: one `key = value` per line, `#` comments.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Write output here instead of standard output, plus <PATH>.manifest.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Built-in parameter set: btc-2025, monero, or etc.
    #[arg(long, global = true, value_name = "NAME")]
    preset: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Block probability, income, and profit per miner, plus the classical
    /// to quantum profit ratio G when both are given.
    Profit(ProfitArgs),
    /// Break-even operating-cost table over hash-rate and exchange-rate
    /// grids (CSV).
    Table1(Table1Args),
    /// Years until the quantum equivalent hash rate overtakes the network
    /// (CSV series plus summary).
    Crossover(CrossoverArgs),
    /// Difficulty-retargeting chain simulation with mixed miners (CSV, one
    /// row per epoch).
    Simulate(SimulateArgs),
    /// Toy Grover search on a miniature PoW instance, with the classical
    /// baseline.
    Grover(GroverArgs),
    /// Polynomial fit of a history CSV and evaluation at a chosen point.
    Extrapolate(ExtrapolateArgs),
}

/// Chain parameters shared by the economics-facing subcommands.
#[derive(Args)]
struct ChainArgs {
    /// Target block time t in seconds.
    #[arg(long, value_name = "S")]
    t: Option<f64>,

    /// Hash-size constant eta (2^32 for Bitcoin-style targets).
    #[arg(long, value_name = "H")]
    eta: Option<f64>,

    /// Difficulty D.
    #[arg(long, value_name = "D")]
    difficulty: Option<f64>,

    /// Block reward B in coin units.
    #[arg(long, value_name = "COINS")]
    reward: Option<f64>,

    /// Blocks per retarget window.
    #[arg(long, value_name = "BLOCKS")]
    interval: Option<u32>,
}

#[derive(Args)]
struct ProfitArgs {
    /// Classical hash rate in H/s.
    #[arg(long, value_name = "HPS")]
    classical_rate: Option<f64>,

    /// Classical operating cost in USD per year.
    #[arg(long, value_name = "USD")]
    classical_opex: Option<f64>,

    /// Classical one-off setup cost in USD.
    #[arg(long, value_name = "USD")]
    classical_setup: Option<f64>,

    /// Quantum equivalent hash rate in H/s.
    #[arg(long, value_name = "HPS")]
    quantum_rate: Option<f64>,

    /// Quantum operating cost in USD per year.
    #[arg(long, value_name = "USD")]
    quantum_opex: Option<f64>,

    /// Quantum one-off setup cost in USD.
    #[arg(long, value_name = "USD")]
    quantum_setup: Option<f64>,

    /// Timespan in years.
    #[arg(long, value_name = "YEARS")]
    years: Option<f64>,

    /// Exchange rate in USD per coin.
    #[arg(long, value_name = "USD")]
    fiat: Option<f64>,

    #[command(flatten)]
    chain: ChainArgs,
}

#[derive(Args)]
struct Table1Args {
    /// Comma-separated quantum equivalent hash rates in H/s.
    #[arg(long, value_delimiter = ',', value_name = "HPS,..")]
    rates: Option<Vec<f64>>,

    /// Comma-separated exchange rates in USD per coin.
    #[arg(long, value_delimiter = ',', value_name = "USD,..")]
    frates: Option<Vec<f64>>,

    #[command(flatten)]
    chain: ChainArgs,
}

#[derive(Args)]
struct CrossoverArgs {
    /// Network hash rate today in H/s.
    #[arg(long, value_name = "HPS")]
    network: Option<f64>,

    /// Quantum clock rate today in cycles per second.
    #[arg(long, value_name = "HZ")]
    clock: Option<f64>,

    /// Grover accounting window in seconds.
    #[arg(long, value_name = "S")]
    window: Option<f64>,

    /// Doubling period in years applied to both curves.
    #[arg(long, value_name = "YEARS")]
    doubling_period: Option<f64>,

    /// Doubling period override for the network curve.
    #[arg(long, value_name = "YEARS")]
    network_doubling: Option<f64>,

    /// Doubling period override for the quantum clock.
    #[arg(long, value_name = "YEARS")]
    quantum_doubling: Option<f64>,

    /// Last year to include in the CSV series.
    #[arg(long, value_name = "YEARS")]
    horizon: Option<f64>,

    /// Sample spacing in years.
    #[arg(long, value_name = "YEARS")]
    step: Option<f64>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Expected-value or sampled block arrivals.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,

    /// Retarget epochs to run.
    #[arg(long, value_name = "N")]
    epochs: Option<u32>,

    /// Per-retarget difficulty swing bound: D'/D clamped to [1/c, c].
    #[arg(long, value_name = "C")]
    clamp: Option<f64>,

    /// Exchange rate in USD per coin.
    #[arg(long, value_name = "USD")]
    fiat: Option<f64>,

    #[command(flatten)]
    chain: ChainArgs,
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    Deterministic,
    Stochastic,
}

#[derive(Args)]
struct GroverArgs {
    /// Nonce-space width in bits (2 to 24).
    #[arg(long, value_name = "BITS")]
    n_bits: Option<u32>,

    /// Fixed block-header word.
    #[arg(long, value_name = "WORD")]
    header: Option<u32>,

    /// Digest threshold; a nonce solves the instance when digest <= target.
    #[arg(long, value_name = "T")]
    target: Option<u32>,
}

#[derive(Args)]
struct ExtrapolateArgs {
    /// History CSV with header `x,y` and strictly increasing x.
    #[arg(long, value_name = "PATH")]
    history: Option<PathBuf>,

    /// Polynomial degree.
    #[arg(long, value_name = "D")]
    degree: Option<usize>,

    /// Point on the x axis to evaluate the fit at.
    #[arg(long, value_name = "X")]
    at: Option<f64>,
}

fn main() {
    let cli = Cli::parse();
    if let Err(failure) = run(cli) {
        eprintln!("error: {}", failure.message());
        std::process::exit(failure.code());
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let settings = Settings::new(cli.config.as_deref(), cli.preset.as_deref())?;
    let seed = settings.or("seed", cli.seed, 0u64)?;
    let out = cli.out.as_deref();
    let preset = cli.preset.as_deref();
    match cli.command {
        Command::Profit(args) => cmd_profit(args, &settings, seed, out, preset),
        Command::Table1(args) => cmd_table1(args, &settings, seed, out, preset),
        Command::Crossover(args) => cmd_crossover(args, &settings, seed, out, preset),
        Command::Simulate(args) => cmd_simulate(args, &settings, seed, out, preset),
        Command::Grover(args) => cmd_grover(args, &settings, seed, out, preset),
        Command::Extrapolate(args) => cmd_extrapolate(args, &settings, seed, out, preset),
    }
}

fn new_manifest(subcommand: &str, preset: Option<&str>, seed: u64) -> Manifest {
    let mut manifest = Manifest::new(subcommand);
    if let Some(name) = preset {
        manifest.push("preset", name);
    }
    manifest.push("seed", seed);
    manifest
}

fn resolve_chain(args: &ChainArgs, settings: &Settings) -> Result<ChainParams, Failure> {
    let d = ChainParams::btc_2025();
    let chain = ChainParams {
        block_time_s: settings.or("chain.t", args.t, d.block_time_s)?,
        hash_size: settings.or("chain.eta", args.eta, d.hash_size)?,
        difficulty: settings.or("chain.difficulty", args.difficulty, d.difficulty)?,
        block_reward: settings.or("chain.reward", args.reward, d.block_reward)?,
        retarget_interval: settings.or("chain.interval", args.interval, d.retarget_interval)?,
    };
    chain.validate()?;
    Ok(chain)
}

fn push_chain(manifest: &mut Manifest, chain: &ChainParams) {
    manifest.push("chain.t", chain.block_time_s);
    manifest.push("chain.eta", chain.hash_size);
    manifest.push("chain.difficulty", chain.difficulty);
    manifest.push("chain.reward", chain.block_reward);
    manifest.push("chain.interval", chain.retarget_interval);
}

/// Reference exchange rate used when `--fiat` is absent (USD per BTC, first
/// column of the default break-even table).
const DEFAULT_FIAT: f64 = 23536.12;

fn resolve_market(flag: Option<f64>, settings: &Settings) -> Result<Market, Failure> {
    let market = Market::new(settings.or("market.fiat", flag, DEFAULT_FIAT)?);
    market.validate()?;
    Ok(market)
}

/// A miner is configured as soon as its rate is known; opex and setup
/// default to zero. Cost flags without a rate are rejected as a likely
/// mistake.
fn resolve_flag_miner(
    settings: &Settings,
    kind: MinerKind,
    prefix: &str,
    rate: Option<f64>,
    opex: Option<f64>,
    setup: Option<f64>,
) -> Result<Option<MinerSpec>, Failure> {
    let rate = settings.opt::<f64>(&format!("{prefix}.rate"), rate)?;
    let opex = settings.opt::<f64>(&format!("{prefix}.opex"), opex)?;
    let setup = settings.opt::<f64>(&format!("{prefix}.setup"), setup)?;
    let Some(rate) = rate else {
        if opex.is_some() || setup.is_some() {
            return Err(Failure::Usage(format!(
                "{prefix} costs were given without --{prefix}-rate"
            )));
        }
        return Ok(None);
    };
    let spec = match kind {
        MinerKind::Classical => MinerSpec::classical(rate),
        MinerKind::Quantum => MinerSpec::quantum(rate),
    }
    .with_opex(opex.unwrap_or(0.0))
    .with_setup(setup.unwrap_or(0.0));
    spec.validate()?;
    Ok(Some(spec))
}

fn push_miner(manifest: &mut Manifest, prefix: &str, spec: &MinerSpec) {
    manifest.push(format!("{prefix}.rate").as_str(), spec.rate_hps);
    manifest.push(format!("{prefix}.opex").as_str(), spec.opex_usd_per_year);
    manifest.push(format!("{prefix}.setup").as_str(), spec.setup_cost_usd);
}

fn cmd_profit(
    args: ProfitArgs,
    settings: &Settings,
    seed: u64,
    out: Option<&Path>,
    preset: Option<&str>,
) -> Result<(), Failure> {
    let chain = resolve_chain(&args.chain, settings)?;
    let market = resolve_market(args.fiat, settings)?;
    let years = settings.or("profit.years", args.years, 1.0)?;
    if !(years.is_finite() && years > 0.0) {
        return Err(Failure::Usage(format!("--years must be > 0, got {years}")));
    }
    let timespan_s = years * econ::SECONDS_PER_YEAR;

    let classical = resolve_flag_miner(
        settings,
        MinerKind::Classical,
        "classical",
        args.classical_rate,
        args.classical_opex,
        args.classical_setup,
    )?;
    let quantum = resolve_flag_miner(
        settings,
        MinerKind::Quantum,
        "quantum",
        args.quantum_rate,
        args.quantum_opex,
        args.quantum_setup,
    )?;
    if classical.is_none() && quantum.is_none() {
        return Err(Failure::Usage(
            "supply at least one of --classical-rate or --quantum-rate".into(),
        ));
    }

    let mut body = format!("years = {years}\n");
    for spec in [&classical, &quantum].into_iter().flatten() {
        let label = spec.kind.as_str();
        let report = econ::profit_report(spec, &chain, &market, timespan_s)?;
        let _ = writeln!(
            body,
            "{label}.block_probability = {:.5e}",
            report.block_probability
        );
        let _ = writeln!(body, "{label}.income_usd = {:.2}", report.income_usd);
        let _ = writeln!(body, "{label}.profit_usd = {:.2}", report.profit_usd);
    }
    if let (Some(c), Some(q)) = (&classical, &quantum) {
        let g = econ::profit_ratio(c, q, &chain, &market, timespan_s)?;
        let _ = writeln!(body, "profit_ratio_g = {g:.5e}");
    }

    let mut manifest = new_manifest("profit", preset, seed);
    push_chain(&mut manifest, &chain);
    manifest.push("market.fiat", market.rate_usd_per_coin);
    manifest.push("profit.years", years);
    if let Some(spec) = &classical {
        push_miner(&mut manifest, "classical", spec);
    }
    if let Some(spec) = &quantum {
        push_miner(&mut manifest, "quantum", spec);
    }
    write_output(out, &body, &manifest)
}

fn join_display(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_table1(
    args: Table1Args,
    settings: &Settings,
    seed: u64,
    out: Option<&Path>,
    preset: Option<&str>,
) -> Result<(), Failure> {
    let chain = resolve_chain(&args.chain, settings)?;
    let rates = settings.f64_list_or("table1.rates", args.rates, &econ::TABLE1_RATES_HPS)?;
    let frates = settings.f64_list_or("table1.frates", args.frates, &econ::TABLE1_FIAT_RATES)?;
    let rows = econ::table1_scenarios(&chain, &rates, &frates)?;

    let mut body = String::from("h_q_hs,f_usd,break_even_opex_usd\n");
    for row in &rows {
        let _ = writeln!(
            body,
            "{},{},{:.2}",
            row.rate_hps, row.fiat_rate, row.break_even_opex_usd
        );
    }

    let mut manifest = new_manifest("table1", preset, seed);
    push_chain(&mut manifest, &chain);
    manifest.push("table1.rates", join_display(&rates));
    manifest.push("table1.frates", join_display(&frates));
    write_output(out, &body, &manifest)
}

fn cmd_crossover(
    args: CrossoverArgs,
    settings: &Settings,
    seed: u64,
    out: Option<&Path>,
    preset: Option<&str>,
) -> Result<(), Failure> {
    let network_rate = settings.or("crossover.network", args.network, 130e18)?;
    let clock = settings.or("crossover.clock", args.clock, 4.0e7)?;
    let window = settings.or("crossover.window", args.window, forecast::DEFAULT_WINDOW_S)?;
    let shared = args.doubling_period;
    let network_doubling = settings.or(
        "crossover.network_doubling",
        args.network_doubling.or(shared),
        forecast::DEFAULT_DOUBLING_PERIOD_YEARS,
    )?;
    let quantum_doubling = settings.or(
        "crossover.quantum_doubling",
        args.quantum_doubling.or(shared),
        forecast::DEFAULT_DOUBLING_PERIOD_YEARS,
    )?;
    let horizon = settings.or("crossover.horizon", args.horizon, 40.0)?;
    let step = settings.or("crossover.step", args.step, 1.0)?;

    let network = GrowthModel::linear(network_rate, network_doubling);
    let quantum = GrowthModel::quadratic(clock, quantum_doubling);
    let result = forecast::crossover_time(&network, &quantum, step, window)?;

    let mut body = String::from("year,network_hs,quantum_equivalent_hs\n");
    for point in &result.series {
        if point.year > horizon * (1.0 + 1e-12) {
            break;
        }
        let _ = writeln!(
            body,
            "{},{},{}",
            point.year, point.network_rate_hps, point.quantum_equivalent_hps
        );
    }
    if result.already_crossed {
        body.push_str("already_crossed=true\n");
    } else {
        let _ = writeln!(body, "crossover_years={}", result.years_until_crossover);
    }

    let mut manifest = new_manifest("crossover", preset, seed);
    manifest.push("crossover.network", network_rate);
    manifest.push("crossover.clock", clock);
    manifest.push("crossover.window", window);
    manifest.push("crossover.network_doubling", network_doubling);
    manifest.push("crossover.quantum_doubling", quantum_doubling);
    manifest.push("crossover.horizon", horizon);
    manifest.push("crossover.step", step);
    write_output(out, &body, &manifest)
}

fn resolve_config_miner(settings: &Settings, idx: usize) -> Result<MinerSpec, Failure> {
    let kind_key = format!("miner.{idx}.kind");
    let rate_key = format!("miner.{idx}.rate");
    let kind = settings
        .str_opt(&kind_key, None)
        .ok_or_else(|| Failure::Usage(format!("miner {idx} is missing '{kind_key}'")))?;
    let rate = settings
        .opt::<f64>(&rate_key, None)?
        .ok_or_else(|| Failure::Usage(format!("miner {idx} is missing '{rate_key}'")))?;
    let opex = settings.or(&format!("miner.{idx}.opex"), None, 0.0)?;
    let setup = settings.or(&format!("miner.{idx}.setup"), None, 0.0)?;
    let spec = match kind.as_str() {
        "classical" => MinerSpec::classical(rate),
        "quantum" => MinerSpec::quantum(rate),
        other => {
            let place = settings
                .line_of(&kind_key)
                .map(|l| format!("config line {l}: "))
                .unwrap_or_default();
            return Err(Failure::Usage(format!(
                "{place}invalid value for '{kind_key}': '{other}' (expected classical or quantum)"
            )));
        }
    };
    Ok(spec.with_opex(opex).with_setup(setup))
}

fn resolve_adoption(settings: &Settings) -> Result<Option<AdoptionRule>, Failure> {
    let threshold = settings.opt::<f64>("adoption.threshold", None)?;
    let count = settings.opt::<u32>("adoption.count", None)?;
    let rate = settings.opt::<f64>("adoption.template.rate", None)?;
    let opex = settings.opt::<f64>("adoption.template.opex", None)?;
    let setup = settings.opt::<f64>("adoption.template.setup", None)?;
    if threshold.is_none() && count.is_none() && rate.is_none() && opex.is_none() && setup.is_none()
    {
        return Ok(None);
    }
    let threshold_g = threshold
        .ok_or_else(|| Failure::Usage("adoption rule needs 'adoption.threshold'".into()))?;
    let template_rate = rate
        .ok_or_else(|| Failure::Usage("adoption rule needs 'adoption.template.rate'".into()))?;
    Ok(Some(AdoptionRule {
        threshold_g,
        miners_per_trigger: count.unwrap_or(1),
        template: MinerSpec::quantum(template_rate)
            .with_opex(opex.unwrap_or(0.0))
            .with_setup(setup.unwrap_or(0.0)),
    }))
}

fn cmd_simulate(
    args: SimulateArgs,
    settings: &Settings,
    seed: u64,
    out: Option<&Path>,
    preset: Option<&str>,
) -> Result<(), Failure> {
    let chain = resolve_chain(&args.chain, settings)?;
    let market = resolve_market(args.fiat, settings)?;
    let mode = match args.mode {
        Some(ModeArg::Deterministic) => SimMode::Deterministic,
        Some(ModeArg::Stochastic) => SimMode::Stochastic,
        None => match settings.str_opt("sim.mode", None).as_deref() {
            None | Some("deterministic") => SimMode::Deterministic,
            Some("stochastic") => SimMode::Stochastic,
            Some(other) => {
                let place = settings
                    .line_of("sim.mode")
                    .map(|l| format!("config line {l}: "))
                    .unwrap_or_default();
                return Err(Failure::Usage(format!(
                    "{place}invalid value for 'sim.mode': '{other}' (expected deterministic or stochastic)"
                )));
            }
        },
    };
    let epochs = settings.or("sim.epochs", args.epochs, 10u32)?;
    let clamp_factor = settings.opt::<f64>("sim.clamp", args.clamp)?;

    let indices = settings.miner_indices();
    if indices.is_empty() {
        return Err(Failure::Usage(
            "no miners configured; supply miner.<n>.kind and miner.<n>.rate via --config".into(),
        ));
    }
    let miners = indices
        .iter()
        .map(|&idx| resolve_config_miner(settings, idx))
        .collect::<Result<Vec<_>, _>>()?;
    let adoption = resolve_adoption(settings)?;

    let config = SimConfig {
        chain,
        miners,
        market,
        mode,
        seed,
        epochs,
        adoption,
        clamp_factor,
    };
    config.validate()?;

    let mut manifest = new_manifest("simulate", preset, seed);
    push_chain(&mut manifest, &config.chain);
    manifest.push("market.fiat", config.market.rate_usd_per_coin);
    manifest.push(
        "sim.mode",
        match mode {
            SimMode::Deterministic => "deterministic",
            SimMode::Stochastic => "stochastic",
        },
    );
    manifest.push("sim.epochs", epochs);
    if let Some(c) = clamp_factor {
        manifest.push("sim.clamp", c);
    }
    for (slot, spec) in config.miners.iter().enumerate() {
        manifest.push(format!("miner.{slot}.kind").as_str(), spec.kind.as_str());
        push_miner(&mut manifest, &format!("miner.{slot}"), spec);
    }
    if let Some(rule) = &config.adoption {
        manifest.push("adoption.threshold", rule.threshold_g);
        manifest.push("adoption.count", rule.miners_per_trigger);
        push_miner(&mut manifest, "adoption.template", &rule.template);
    }

    let stats = sim::run_simulation(config)?;
    let mut body = String::from(
        "epoch,difficulty,elapsed_s,mean_block_time_s,quantum_share,classical_reward_share,g_ratio\n",
    );
    for s in &stats {
        let g = match s.profit_ratio_g {
            Some(v) => v.to_string(),
            None => "nan".into(),
        };
        let _ = writeln!(
            body,
            "{},{},{},{},{},{},{}",
            s.epoch_index,
            s.difficulty_start,
            s.elapsed_s,
            s.mean_block_time_s,
            s.quantum_rate_share,
            s.classical_reward_share,
            g
        );
    }
    write_output(out, &body, &manifest)
}

fn cmd_grover(
    args: GroverArgs,
    settings: &Settings,
    seed: u64,
    out: Option<&Path>,
    preset: Option<&str>,
) -> Result<(), Failure> {
    let n_bits = settings.or("grover.n_bits", args.n_bits, 10u32)?;
    let header = settings.or("grover.header", args.header, 0u32)?;
    let target = settings.or("grover.target", args.target, 0u32)?;

    let instance = PowInstance::new(ToyHash::new(header, n_bits)?, target)?;
    let report = grover::advantage_report(&instance)?;
    let outcome = grover::grover_search(&instance, report.grover_queries)?;
    let classical = grover::classical_search(&instance, seed)?;

    let mut body = String::new();
    let _ = writeln!(body, "n = {}", instance.n());
    let _ = writeln!(body, "m = {}", instance.m());
    let _ = writeln!(body, "k_star = {}", report.grover_queries);
    let _ = writeln!(
        body,
        "success_probability = {:.9}",
        outcome.success_probability
    );
    let _ = writeln!(body, "grover_queries = {}", outcome.queries_used);
    let _ = writeln!(body, "classical_expected = {}", report.classical_expected);
    let _ = writeln!(body, "classical_tries = {}", classical.tries);
    let _ = writeln!(body, "verify_ops = {}", report.verify_ops);

    let mut manifest = new_manifest("grover", preset, seed);
    manifest.push("grover.n_bits", n_bits);
    manifest.push("grover.header", header);
    manifest.push("grover.target", target);
    write_output(out, &body, &manifest)
}

fn cmd_extrapolate(
    args: ExtrapolateArgs,
    settings: &Settings,
    seed: u64,
    out: Option<&Path>,
    preset: Option<&str>,
) -> Result<(), Failure> {
    let history = settings
        .str_opt(
            "extrapolate.history",
            args.history.map(|p| p.display().to_string()),
        )
        .ok_or_else(|| Failure::Usage("missing --history <PATH>".into()))?;
    let degree = settings.or("extrapolate.degree", args.degree, 2usize)?;
    let at = settings
        .opt::<f64>("extrapolate.at", args.at)?
        .ok_or_else(|| Failure::Usage("missing --at <X>".into()))?;

    let points = series::load_series(Path::new(&history))?;
    let fit = forecast::fit_polynomial(&points, degree)?;
    let value = forecast::extrapolate_difficulty(&fit, at)?;

    let mut body = format!("degree = {}\n", fit.degree);
    let _ = writeln!(body, "coefficients = {}", join_display(&fit.coefficients));
    let _ = writeln!(body, "residual_rms = {:e}", fit.residual_rms);
    let _ = writeln!(body, "extrapolated = {value}");

    let mut manifest = new_manifest("extrapolate", preset, seed);
    manifest.push("extrapolate.history", &history);
    manifest.push("extrapolate.degree", degree);
    manifest.push("extrapolate.at", at);
    write_output(out, &body, &manifest)
}

//! Mining profitability algebra for classical and quantum miners.
//!
//! A miner's chance of winning a block over one block period is its share of
//! the network's effective hash work. For a classical device with hash rate
//! `H` on a chain with block time `t`, hash-size constant `η` and difficulty
//! `D`, the per-period win probability is
//!
//! ```text
//! P_C = H·t² / (η·D)
//! ```
//!
//! A device running amplitude amplification attacks the same search problem in
//! the square root of its size. Difficulty is the tuneable knob of that size,
//! so the quantum win probability carries √D in place of D:
//!
//! ```text
//! P_Q = H·t² / (η·√D)
//! ```
//!
//! where `H` is now the device's *equivalent* hash rate (see
//! [`crate::forecast::equivalent_hash_rate`]). Everything else follows from
//! these two: income over a timespan `T` is `f(T/t · P · B)` with block reward
//! `B` and fiat conversion `f`, profit subtracts operating and setup costs,
//! and the profit ratio `G = R_C / R_Q` marks the switch-over point — any
//! `G < 1` means the quantum miner is the more profitable choice.

use crate::error::{Error, Result};

/// Seconds in the accounting year used by every per-year interface
/// (365 days; this convention reproduces the reference break-even table
/// to better than 0.02%).
pub const SECONDS_PER_YEAR: f64 = 365.0 * 24.0 * 3600.0;

/// Whether a miner does plain hashing or amplitude-amplified search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinerKind {
    Classical,
    Quantum,
}

impl MinerKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MinerKind::Classical => "classical",
            MinerKind::Quantum => "quantum",
        }
    }
}

/// Protocol constants of a proof-of-work chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainParams {
    /// Target block time `t` in seconds.
    pub block_time_s: f64,
    /// Hash-size constant `η` (2³² for Bitcoin-style difficulty-1 targets).
    pub hash_size: f64,
    /// Current difficulty `D`.
    pub difficulty: f64,
    /// Block reward `B` in coin units.
    pub block_reward: f64,
    /// Blocks between difficulty retargets.
    pub retarget_interval: u32,
}

impl ChainParams {
    /// Bitcoin-flavoured scenario constants: t = 600 s, η = 2³², B = 3.125,
    /// D = 4.2903×10¹⁸, retarget every 2016 blocks.
    pub fn btc_2025() -> Self {
        ChainParams {
            block_time_s: 600.0,
            hash_size: 4294967296.0,
            difficulty: 4.2903e18,
            block_reward: 3.125,
            retarget_interval: 2016,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("block_time_s", self.block_time_s)?;
        check_finite("hash_size", self.hash_size)?;
        if self.hash_size < 1.0 {
            return Err(invalid("hash_size", "must be >= 1", self.hash_size));
        }
        check_finite("difficulty", self.difficulty)?;
        if self.difficulty < 1.0 {
            return Err(invalid("difficulty", "must be >= 1", self.difficulty));
        }
        check_finite("block_reward", self.block_reward)?;
        if self.block_reward < 0.0 {
            return Err(invalid("block_reward", "must be >= 0", self.block_reward));
        }
        if self.retarget_interval < 1 {
            return Err(Error::InvalidParam {
                name: "retarget_interval",
                reason: "must be >= 1".into(),
            });
        }
        Ok(())
    }

    /// Retarget window in seconds: `retarget_interval · t`.
    pub fn retarget_target_s(&self) -> f64 {
        self.retarget_interval as f64 * self.block_time_s
    }
}

/// One mining entity.
///
/// `rate_hps` is the native hash rate for a classical device and the
/// *equivalent* hash rate for a quantum one. Costs are in USD; the operating
/// cost is declared per accounting year (see [`SECONDS_PER_YEAR`]).
#[derive(Debug, Clone, PartialEq)]
pub struct MinerSpec {
    pub kind: MinerKind,
    pub rate_hps: f64,
    pub opex_usd_per_year: f64,
    pub setup_cost_usd: f64,
}

impl MinerSpec {
    /// A cost-free classical miner with the given hash rate.
    pub fn classical(rate_hps: f64) -> Self {
        MinerSpec {
            kind: MinerKind::Classical,
            rate_hps,
            opex_usd_per_year: 0.0,
            setup_cost_usd: 0.0,
        }
    }

    /// A cost-free quantum miner with the given equivalent hash rate.
    pub fn quantum(rate_hps: f64) -> Self {
        MinerSpec {
            kind: MinerKind::Quantum,
            rate_hps,
            opex_usd_per_year: 0.0,
            setup_cost_usd: 0.0,
        }
    }

    pub fn with_opex(mut self, usd_per_year: f64) -> Self {
        self.opex_usd_per_year = usd_per_year;
        self
    }

    pub fn with_setup(mut self, usd: f64) -> Self {
        self.setup_cost_usd = usd;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("rate_hps", self.rate_hps)?;
        check_finite("opex_usd_per_year", self.opex_usd_per_year)?;
        if self.opex_usd_per_year < 0.0 {
            return Err(invalid("opex_usd_per_year", "must be >= 0", self.opex_usd_per_year));
        }
        check_finite("setup_cost_usd", self.setup_cost_usd)?;
        if self.setup_cost_usd < 0.0 {
            return Err(invalid("setup_cost_usd", "must be >= 0", self.setup_cost_usd));
        }
        Ok(())
    }
}

/// Fiat conversion `f`, applied as a constant multiplicative rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Market {
    /// USD per coin.
    pub rate_usd_per_coin: f64,
}

impl Market {
    pub fn new(rate_usd_per_coin: f64) -> Self {
        Market { rate_usd_per_coin }
    }

    /// f(x) = x · rate.
    pub fn to_usd(&self, coins: f64) -> f64 {
        coins * self.rate_usd_per_coin
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("rate_usd_per_coin", self.rate_usd_per_coin)
    }
}

/// The per-miner outcome of a profitability evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfitReport {
    /// Per-block-period win probability P.
    pub block_probability: f64,
    /// Income I = f(T/t · P · B) over the timespan, in USD.
    pub income_usd: f64,
    /// Profit R = I − T·O − S, in USD.
    pub profit_usd: f64,
    /// The timespan T the report covers, in seconds.
    pub timespan_s: f64,
}

/// Probability of winning a block within one block period.
///
/// Classical: `H·t²/(η·D)`. Quantum: `H·t²/(η·√D)`. With large rates this is
/// an expected block count rather than a true probability and may exceed 1.
pub fn block_probability(miner: &MinerSpec, chain: &ChainParams) -> Result<f64> {
    miner.validate()?;
    chain.validate()?;
    let t = chain.block_time_s;
    let denom = chain.hash_size * effective_difficulty(miner.kind, chain.difficulty);
    let p = miner.rate_hps * t * t / denom;
    if !p.is_finite() {
        return Err(Error::NonFinite {
            context: "block_probability",
        });
    }
    Ok(p)
}

/// Difficulty as experienced by each miner kind: `D` classically, `√D` under
/// amplitude amplification.
fn effective_difficulty(kind: MinerKind, difficulty: f64) -> f64 {
    match kind {
        MinerKind::Classical => difficulty,
        MinerKind::Quantum => difficulty.sqrt(),
    }
}

/// Income in USD over `timespan_s`: `f(T/t · P · B)`.
pub fn income(
    miner: &MinerSpec,
    chain: &ChainParams,
    market: &Market,
    timespan_s: f64,
) -> Result<f64> {
    market.validate()?;
    check_positive("timespan_s", timespan_s)?;
    let p = block_probability(miner, chain)?;
    let coins = timespan_s / chain.block_time_s * p * chain.block_reward;
    let usd = market.to_usd(coins);
    if !usd.is_finite() {
        return Err(Error::NonFinite { context: "income" });
    }
    Ok(usd)
}

/// Profit in USD over `timespan_s`: income minus operating costs for the
/// timespan minus the one-off setup cost.
pub fn profit(
    miner: &MinerSpec,
    chain: &ChainParams,
    market: &Market,
    timespan_s: f64,
) -> Result<f64> {
    let i = income(miner, chain, market, timespan_s)?;
    let years = timespan_s / SECONDS_PER_YEAR;
    Ok(i - years * miner.opex_usd_per_year - miner.setup_cost_usd)
}

/// Full report (probability, income, profit) for one miner.
pub fn profit_report(
    miner: &MinerSpec,
    chain: &ChainParams,
    market: &Market,
    timespan_s: f64,
) -> Result<ProfitReport> {
    let block_probability = block_probability(miner, chain)?;
    let income_usd = income(miner, chain, market, timespan_s)?;
    let years = timespan_s / SECONDS_PER_YEAR;
    let profit_usd = income_usd - years * miner.opex_usd_per_year - miner.setup_cost_usd;
    Ok(ProfitReport {
        block_probability,
        income_usd,
        profit_usd,
        timespan_s,
    })
}

/// Profit ratio `G = R_C / R_Q`.
///
/// `G = 1` is the inflection point at which both technologies are equally
/// feasible; `G < 1` means the quantum miner is the more profitable one.
/// Fails with [`Error::DegenerateRatio`] when the quantum profit is zero.
pub fn profit_ratio(
    classical: &MinerSpec,
    quantum: &MinerSpec,
    chain: &ChainParams,
    market: &Market,
    timespan_s: f64,
) -> Result<f64> {
    if classical.kind != MinerKind::Classical {
        return Err(Error::InvalidParam {
            name: "classical",
            reason: "expected a classical miner".into(),
        });
    }
    if quantum.kind != MinerKind::Quantum {
        return Err(Error::InvalidParam {
            name: "quantum",
            reason: "expected a quantum miner".into(),
        });
    }
    let r_c = profit(classical, chain, market, timespan_s)?;
    let r_q = profit(quantum, chain, market, timespan_s)?;
    if r_q == 0.0 {
        return Err(Error::DegenerateRatio);
    }
    Ok(r_c / r_q)
}

/// The operating cost (USD per year) at which the miner's profit over
/// `timespan_s` is exactly zero, assuming no setup cost.
///
/// Setting income equal to `T·O` gives `O = I/T`; with `T` of one year this
/// is simply the annual income.
pub fn break_even_opex(
    miner: &MinerSpec,
    chain: &ChainParams,
    market: &Market,
    timespan_s: f64,
) -> Result<f64> {
    let i = income(miner, chain, market, timespan_s)?;
    let years = timespan_s / SECONDS_PER_YEAR;
    Ok(i / years)
}

/// One row of a break-even scenario table.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioRow {
    /// Quantum equivalent hash rate H_Q in H/s.
    pub rate_hps: f64,
    /// Fiat conversion rate in USD per coin.
    pub fiat_rate: f64,
    /// Break-even annual operating cost in USD.
    pub break_even_opex_usd: f64,
}

/// Default equivalent hash rates for [`table1_scenarios`]: a 40 MHz clock
/// held constant, and the same clock after four doubling cycles (640 MHz).
pub const TABLE1_RATES_HPS: [f64; 2] = [4.0e7, 6.4e8];

/// Default fiat conversion rates for [`table1_scenarios`] in USD per coin.
pub const TABLE1_FIAT_RATES: [f64; 4] = [23536.12, 10385.49, 31000.00, 100000.00];

/// Break-even annual operating cost for every combination of quantum
/// equivalent hash rate and fiat rate, over a one-year timespan with zero
/// setup cost. Rows iterate rates in the outer loop and fiat rates in the
/// inner loop.
pub fn table1_scenarios(
    chain: &ChainParams,
    rates_hps: &[f64],
    fiat_rates: &[f64],
) -> Result<Vec<ScenarioRow>> {
    if rates_hps.is_empty() {
        return Err(Error::InvalidParam {
            name: "rates_hps",
            reason: "must be non-empty".into(),
        });
    }
    if fiat_rates.is_empty() {
        return Err(Error::InvalidParam {
            name: "fiat_rates",
            reason: "must be non-empty".into(),
        });
    }
    let mut rows = Vec::with_capacity(rates_hps.len() * fiat_rates.len());
    for &rate in rates_hps {
        for &fiat in fiat_rates {
            let miner = MinerSpec::quantum(rate);
            let market = Market::new(fiat);
            let opex = break_even_opex(&miner, chain, &market, SECONDS_PER_YEAR)?;
            rows.push(ScenarioRow {
                rate_hps: rate,
                fiat_rate: fiat,
                break_even_opex_usd: opex,
            });
        }
    }
    Ok(rows)
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    check_finite(name, value)?;
    if value <= 0.0 {
        return Err(invalid(name, "must be > 0", value));
    }
    Ok(())
}

fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(invalid(name, "must be finite", value));
    }
    Ok(())
}

fn invalid(name: &'static str, what: &str, value: f64) -> Error {
    Error::InvalidParam {
        name,
        reason: format!("{what}, got {value}"),
    }
}

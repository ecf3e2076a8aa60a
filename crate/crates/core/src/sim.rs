//! Discrete-time simulation of a proof-of-work chain with mixed classical
//! and quantum miners, difficulty retargeting, and an optional
//! profitability-driven adoption feedback loop.
//!
//! Each epoch spans one retarget interval. Miners produce blocks at rate
//! `P/t` (their per-period win probability divided by the block time), so a
//! quantum miner's rate carries the √D advantage and reacts to difficulty
//! changes more gently than a classical miner's 1/D. The retarget rule then
//! rescales difficulty by how far the epoch ran ahead of or behind schedule.
//!
//! Two closed-form fixed points anchor the dynamics and the tests. With
//! only classical miners, one retarget lands exactly on
//! `D* = t²·ΣH/η` because the miss ratio is independent of the starting
//! difficulty. With only quantum miners the update is `D' = √D·(t²·ΣH/η)`,
//! whose log-space error halves every epoch toward `D* = (t²·ΣH/η)²`.
//!
//! Quantum block production is modeled as memoryless: exponential
//! inter-block times at the equivalent rate. Real amplitude-amplification
//! runs are not memoryless, but the profitability algebra assigns a plain
//! per-period probability and the Poisson picture is the minimal stochastic
//! model consistent with it.

use rand_chacha::ChaCha8Rng;

use crate::econ::{self, ChainParams, Market, MinerKind, MinerSpec};
use crate::error::{Error, Result};
use crate::rng::{exponential, rng_from_seed};

/// How an epoch's blocks are attributed to miners.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimMode {
    /// Expected-value accounting: elapsed = interval / Σ rates, blocks
    /// proportional to rates.
    Deterministic,
    /// Per-block competition: every block goes to the miner with the
    /// smallest exponential arrival time, and those minima accumulate into
    /// the elapsed time.
    Stochastic,
}

/// Feedback rule that injects quantum miners while quantum mining is the
/// more profitable choice.
#[derive(Debug, Clone, PartialEq)]
pub struct AdoptionRule {
    /// Trigger threshold on the profit ratio G; epochs with `G < threshold`
    /// recruit new quantum miners.
    pub threshold_g: f64,
    /// Quantum miners appended per triggering epoch.
    pub miners_per_trigger: u32,
    /// Specification each recruit is cloned from; must be quantum.
    pub template: MinerSpec,
}

/// Full description of a simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub chain: ChainParams,
    pub miners: Vec<MinerSpec>,
    pub market: Market,
    pub mode: SimMode,
    pub seed: u64,
    pub epochs: u32,
    pub adoption: Option<AdoptionRule>,
    /// Optional bound on the per-retarget difficulty swing: `D'/D` is
    /// clamped to `[1/c, c]`. Off by default; 4 mimics Bitcoin.
    pub clamp_factor: Option<f64>,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        self.chain.validate()?;
        self.market.validate()?;
        if self.miners.is_empty() {
            return Err(Error::InvalidParam {
                name: "miners",
                reason: "must be non-empty".into(),
            });
        }
        for miner in &self.miners {
            miner.validate()?;
        }
        if self.epochs < 1 {
            return Err(Error::InvalidParam {
                name: "epochs",
                reason: "must be >= 1".into(),
            });
        }
        if let Some(rule) = &self.adoption {
            if !rule.threshold_g.is_finite() {
                return Err(Error::InvalidParam {
                    name: "adoption.threshold_g",
                    reason: format!("must be finite, got {}", rule.threshold_g),
                });
            }
            if rule.miners_per_trigger < 1 {
                return Err(Error::InvalidParam {
                    name: "adoption.miners_per_trigger",
                    reason: "must be >= 1".into(),
                });
            }
            rule.template.validate()?;
            if rule.template.kind != MinerKind::Quantum {
                return Err(Error::InvalidParam {
                    name: "adoption.template",
                    reason: "must be a quantum miner".into(),
                });
            }
        }
        if let Some(c) = self.clamp_factor {
            if !(c.is_finite() && c >= 1.0) {
                return Err(Error::InvalidParam {
                    name: "clamp_factor",
                    reason: format!("must be >= 1, got {c}"),
                });
            }
        }
        Ok(())
    }
}

/// Everything observable about one epoch.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochStats {
    /// Zero-based epoch number.
    pub epoch_index: u32,
    /// Difficulty in force during the epoch (before its retarget).
    pub difficulty_start: f64,
    /// Wall-clock seconds the epoch took.
    pub elapsed_s: f64,
    /// `elapsed_s / retarget_interval`.
    pub mean_block_time_s: f64,
    /// Expected blocks per miner (deterministic) or exact counts
    /// (stochastic), in miner order.
    pub per_miner_blocks: Vec<f64>,
    /// Fraction of the epoch's blocks won by classical miners.
    pub classical_reward_share: f64,
    /// Quantum fraction of the total block rate at the epoch's difficulty.
    pub quantum_rate_share: f64,
    /// Profit ratio G = R_C/R_Q over this epoch, from the first classical
    /// and first quantum miner; `None` while either class is absent or the
    /// quantum profit is exactly zero.
    pub profit_ratio_g: Option<f64>,
}

/// Block production rate in blocks per second: the per-period win
/// probability divided by the block time, `H·t/(η·D)` classically and
/// `H·t/(η·√D)` for quantum miners.
pub fn miner_rate(miner: &MinerSpec, chain: &ChainParams) -> Result<f64> {
    Ok(econ::block_probability(miner, chain)? / chain.block_time_s)
}

/// One difficulty adjustment: `D' = D · target / elapsed` with the target
/// `retarget_interval · t`, optionally clamped to `[D/c, D·c]`, and floored
/// at 1.
pub fn retarget(
    difficulty: f64,
    elapsed_s: f64,
    chain: &ChainParams,
    clamp_factor: Option<f64>,
) -> Result<f64> {
    chain.validate()?;
    if !(difficulty.is_finite() && difficulty > 0.0) {
        return Err(Error::InvalidParam {
            name: "difficulty",
            reason: format!("must be > 0, got {difficulty}"),
        });
    }
    if !elapsed_s.is_finite() || elapsed_s < 0.0 {
        return Err(Error::InvalidParam {
            name: "elapsed_s",
            reason: format!("must be >= 0, got {elapsed_s}"),
        });
    }
    if elapsed_s == 0.0 {
        return Err(Error::ZeroElapsed);
    }
    let mut next = difficulty * chain.retarget_target_s() / elapsed_s;
    if let Some(c) = clamp_factor {
        if !(c.is_finite() && c >= 1.0) {
            return Err(Error::InvalidParam {
                name: "clamp_factor",
                reason: format!("must be >= 1, got {c}"),
            });
        }
        next = next.clamp(difficulty / c, difficulty * c);
    }
    Ok(next.max(1.0))
}

/// Quantum share of the total block rate at the chain's difficulty, plus
/// whether it is a strict majority.
pub fn majority_check(miners: &[MinerSpec], chain: &ChainParams) -> Result<(f64, bool)> {
    if miners.is_empty() {
        return Err(Error::InvalidParam {
            name: "miners",
            reason: "must be non-empty".into(),
        });
    }
    let mut quantum = 0.0;
    let mut total = 0.0;
    for miner in miners {
        let rate = miner_rate(miner, chain)?;
        total += rate;
        if miner.kind == MinerKind::Quantum {
            quantum += rate;
        }
    }
    if total <= 0.0 {
        return Err(Error::Stall);
    }
    let share = quantum / total;
    Ok((share, share > 0.5))
}

/// A running chain. The miner list grows when the adoption rule triggers;
/// everything else in the config stays fixed.
#[derive(Debug, Clone)]
pub struct Simulation {
    config: SimConfig,
    difficulty: f64,
    rng: ChaCha8Rng,
    next_epoch: u32,
}

impl Simulation {
    pub fn new(config: SimConfig) -> Result<Self> {
        config.validate()?;
        let difficulty = config.chain.difficulty;
        let rng = rng_from_seed(config.seed);
        Ok(Simulation {
            config,
            difficulty,
            rng,
            next_epoch: 0,
        })
    }

    pub fn difficulty(&self) -> f64 {
        self.difficulty
    }

    pub fn miners(&self) -> &[MinerSpec] {
        &self.config.miners
    }

    /// Chain parameters with the simulation's current difficulty.
    fn chain_now(&self) -> ChainParams {
        ChainParams {
            difficulty: self.difficulty,
            ..self.config.chain.clone()
        }
    }

    /// Runs one retarget interval, updates difficulty, and applies the
    /// adoption rule.
    pub fn run_epoch(&mut self) -> Result<EpochStats> {
        let chain = self.chain_now();
        let rates: Vec<f64> = self
            .config
            .miners
            .iter()
            .map(|m| miner_rate(m, &chain))
            .collect::<Result<_>>()?;
        let total: f64 = rates.iter().sum();
        if total <= 0.0 {
            return Err(Error::Stall);
        }

        let interval = chain.retarget_interval as f64;
        let (elapsed_s, per_miner_blocks) = match self.config.mode {
            SimMode::Deterministic => {
                let blocks = rates.iter().map(|r| interval * r / total).collect();
                (interval / total, blocks)
            }
            SimMode::Stochastic => {
                let mut counts = vec![0u64; rates.len()];
                let mut elapsed = 0.0;
                for _ in 0..chain.retarget_interval {
                    let mut winner = 0;
                    let mut soonest = f64::INFINITY;
                    for (i, &rate) in rates.iter().enumerate() {
                        let arrival = exponential(&mut self.rng, rate);
                        if arrival < soonest {
                            soonest = arrival;
                            winner = i;
                        }
                    }
                    counts[winner] += 1;
                    elapsed += soonest;
                }
                (elapsed, counts.into_iter().map(|c| c as f64).collect())
            }
        };

        let classical_blocks: f64 = self
            .config
            .miners
            .iter()
            .zip(&per_miner_blocks)
            .filter(|(m, _)| m.kind == MinerKind::Classical)
            .map(|(_, b)| b)
            .sum();
        let quantum_rate: f64 = self
            .config
            .miners
            .iter()
            .zip(&rates)
            .filter(|(m, _)| m.kind == MinerKind::Quantum)
            .map(|(_, r)| r)
            .sum();

        let stats = EpochStats {
            epoch_index: self.next_epoch,
            difficulty_start: self.difficulty,
            elapsed_s,
            mean_block_time_s: elapsed_s / interval,
            // summation dust can push the quotients an ulp past 1
            classical_reward_share: (classical_blocks / interval).clamp(0.0, 1.0),
            quantum_rate_share: (quantum_rate / total).clamp(0.0, 1.0),
            profit_ratio_g: self.epoch_profit_ratio(&chain, elapsed_s),
            per_miner_blocks,
        };

        self.difficulty = retarget(self.difficulty, elapsed_s, &chain, self.config.clamp_factor)?;
        self.next_epoch += 1;

        if let (Some(rule), Some(g)) = (&self.config.adoption, stats.profit_ratio_g) {
            if g < rule.threshold_g {
                for _ in 0..rule.miners_per_trigger {
                    self.config.miners.push(rule.template.clone());
                }
            }
        }

        Ok(stats)
    }

    /// G over this epoch using the first miner of each kind as the
    /// representatives and the epoch's elapsed time as the accounting
    /// timespan.
    fn epoch_profit_ratio(&self, chain: &ChainParams, elapsed_s: f64) -> Option<f64> {
        let classical = self
            .config
            .miners
            .iter()
            .find(|m| m.kind == MinerKind::Classical)?;
        let quantum = self
            .config
            .miners
            .iter()
            .find(|m| m.kind == MinerKind::Quantum)?;
        econ::profit_ratio(classical, quantum, chain, &self.config.market, elapsed_s).ok()
    }
}

/// Runs the configured number of epochs and collects their stats.
pub fn run_simulation(config: SimConfig) -> Result<Vec<EpochStats>> {
    let epochs = config.epochs;
    let mut sim = Simulation::new(config)?;
    let mut out = Vec::with_capacity(epochs as usize);
    for _ in 0..epochs {
        out.push(sim.run_epoch()?);
    }
    Ok(out)
}

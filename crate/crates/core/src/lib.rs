//! A desk-scale laboratory for quantum advantage in proof-of-work mining.
//!
//! Amplitude amplification searches an unstructured space of size `N` in
//! `O(√N)` queries, and proof-of-work mining is exactly such a search. This
//! crate packages the consequences as four small engines:
//!
//! * [`econ`] prices the advantage: win probabilities, income, profit, the
//!   classical-to-quantum profit ratio `G`, and break-even operating costs.
//! * [`forecast`] projects hash-rate growth curves, solves for the year a
//!   single quantum device overtakes a whole network, and extrapolates
//!   difficulty history with polynomial fits.
//! * [`sim`] steps a retargeting chain through epochs with mixed classical
//!   and quantum miners, including a profitability-driven adoption loop.
//! * [`grover`] actually runs Grover search on a toy hash at up to 24 bits,
//!   so the √N query count is an observation, not an assumption.
//!
//! Everything randomized is seeded and reproducible; see [`rng`].
//!
//! ```
//! use qpow::econ::{self, ChainParams, Market, MinerSpec, SECONDS_PER_YEAR};
//!
//! // A 40 MHz quantum device on a Bitcoin-scale chain, priced over a year.
//! let chain = ChainParams::btc_2025();
//! let market = Market::new(23536.12);
//! let miner = MinerSpec::quantum(4.0e7);
//! let income = econ::income(&miner, &chain, &market, SECONDS_PER_YEAR).unwrap();
//! assert!((income - 6258.27).abs() / 6258.27 < 1e-3);
//! ```

pub mod econ;
pub mod error;
pub mod forecast;
pub mod grover;
pub mod rng;
pub mod sim;

pub use error::{Error, Result};

/// Every Rust snippet in the guide runs as a doctest, so the book cannot
/// drift from the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/economics.md")]
    pub struct Economics;
    #[doc = include_str!("../../../book/src/forecasting.md")]
    pub struct Forecasting;
    #[doc = include_str!("../../../book/src/simulation.md")]
    pub struct Simulation;
    #[doc = include_str!("../../../book/src/grover.md")]
    pub struct Grover;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}

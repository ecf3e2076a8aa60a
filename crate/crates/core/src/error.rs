use thiserror::Error;

/// Errors produced by the analysis and simulation engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A computation overflowed or otherwise produced a non-finite value.
    #[error("non-finite result in {context}")]
    NonFinite { context: &'static str },

    /// A parameter violated its documented range.
    #[error("invalid {name}: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    /// Profit ratio G = R_C / R_Q is undefined because the quantum profit is zero.
    #[error("quantum profit is zero; profit ratio G is undefined")]
    DegenerateRatio,

    /// Fewer data points than polynomial coefficients.
    #[error("underdetermined fit: {points} point(s) cannot determine a degree-{degree} polynomial (need at least {})", degree + 1)]
    Underdetermined { points: usize, degree: usize },

    /// The least-squares design matrix is rank-deficient (e.g. duplicate x values).
    #[error("singular fit: design matrix is rank-deficient; check for repeated x values")]
    SingularFit,

    /// A polynomial extrapolation produced a non-positive difficulty.
    #[error("extrapolated difficulty {value} is not positive; try a different degree or data range")]
    NegativeExtrapolation { value: f64 },

    /// The quantum equivalent rate grows too slowly to ever reach the network rate.
    #[error("no crossover: quantum equivalent rate never reaches the network rate")]
    NoCrossover,

    /// Every miner's block rate is zero, so the chain cannot advance.
    #[error("total mining rate is zero; the chain stalls")]
    Stall,

    /// Retargeting requires a positive elapsed time.
    #[error("cannot retarget over zero elapsed time")]
    ZeroElapsed,

    /// The instance has no nonce satisfying the target.
    #[error("no solutions under target: M = 0")]
    NoSolutions,

    /// A classical scan gave up after covering the whole nonce space.
    #[error("search exhausted after {tries} tries with no qualifying nonce")]
    Exhausted { tries: u64 },

    /// The statevector would not fit in memory.
    #[error("n_bits = {n_bits} exceeds the simulator limit of {max}: a statevector needs 2^n_bits amplitude slots (2^{max} = {} slots of 8 bytes at the limit)", 1u64 << max)]
    Capacity { n_bits: u32, max: u32 },

    /// A nonce outside the instance's search space.
    #[error("nonce {nonce} out of range for a {n_bits}-bit search space")]
    NonceRange { nonce: u64, n_bits: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

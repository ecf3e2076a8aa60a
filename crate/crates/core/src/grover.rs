//! Desk-scale statevector simulation of Grover search over a toy
//! proof-of-work instance.
//!
//! The point of this module is to make the quadratic query advantage
//! inspectable rather than taken on faith. A search space of `N = 2ⁿ`
//! nonces (n capped at 24 so the statevector fits in memory) is scanned
//! exhaustively to find the `M` solutions below the target, and the same
//! instance is then attacked three ways:
//!
//! * a seeded classical scan, whose expected cost is `N/M` digest queries,
//! * the actual amplitude-amplification loop on a `2ⁿ`-entry statevector,
//! * the closed-form prediction `sin²((2k+1)·θ)` with `θ = asin(√(M/N))`,
//!   against which the simulation must agree to 10⁻⁹.
//!
//! The hash is a multiply-xorshift mixer instead of SHA-256: bit-exact,
//! cheap, and with a solution density that the target tunes directly, which
//! is the property proof-of-work actually relies on. Verifying a candidate
//! nonce costs one digest evaluation regardless of `N`; solving costs
//! `O(N)` classically and `O(√N)` queries under Grover. That asymmetry is
//! what [`advantage_report`] packages.
//!
//! Amplitudes are tracked as real values: the oracle (a phase flip) and the
//! diffusion operator (reflection about the mean) both preserve the real
//! subspace containing the initial uniform state, so nothing is lost by
//! never leaving it.

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;
use rand_core::RngCore;

/// Largest supported search-space exponent: a statevector needs 2ⁿ
/// amplitude slots of 8 bytes, so 24 bits (128 MiB) is the desk-scale
/// ceiling.
pub const MAX_N_BITS: u32 = 24;

/// Smallest meaningful search space (below 2 bits the diffusion operator
/// degenerates).
pub const MIN_N_BITS: u32 = 2;

fn validate_n_bits(n_bits: u32) -> Result<()> {
    if n_bits > MAX_N_BITS {
        return Err(Error::Capacity {
            n_bits,
            max: MAX_N_BITS,
        });
    }
    if n_bits < MIN_N_BITS {
        return Err(Error::InvalidParam {
            name: "n_bits",
            reason: format!("must be at least {MIN_N_BITS}, got {n_bits}"),
        });
    }
    Ok(())
}

/// Multiply-xorshift digest into an n-bit space, bit-exact across
/// implementations:
///
/// ```text
/// x = (header·2654435761 + nonce) mod 2³²
/// x = x xor (x >> 13)
/// x = (x·2246822519) mod 2³²
/// x = x xor (x >> 16)
/// digest = x mod 2ⁿ
/// ```
pub fn toy_digest(header: u32, nonce: u32, n_bits: u32) -> Result<u32> {
    validate_n_bits(n_bits)?;
    if u64::from(nonce) >= 1u64 << n_bits {
        return Err(Error::NonceRange {
            nonce: u64::from(nonce),
            n_bits,
        });
    }
    let mut x = header.wrapping_mul(2654435761).wrapping_add(nonce);
    x ^= x >> 13;
    x = x.wrapping_mul(2246822519);
    x ^= x >> 16;
    Ok(x & ((1u32 << n_bits) - 1))
}

/// A toy hash function: a fixed header mixed with an n-bit nonce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ToyHash {
    pub header: u32,
    pub n_bits: u32,
}

impl ToyHash {
    pub fn new(header: u32, n_bits: u32) -> Result<Self> {
        validate_n_bits(n_bits)?;
        Ok(ToyHash { header, n_bits })
    }

    /// Number of candidate nonces, `N = 2ⁿ`.
    pub fn space_size(&self) -> u64 {
        1u64 << self.n_bits
    }

    pub fn digest(&self, nonce: u32) -> Result<u32> {
        toy_digest(self.header, nonce, self.n_bits)
    }
}

/// A concrete search problem: find any nonce whose digest is at or below
/// the target. Solutions are enumerated once at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowInstance {
    hash: ToyHash,
    target: u32,
    solutions: Vec<u32>,
}

impl PowInstance {
    /// Builds the instance and brute-forces its solution set. `target` must
    /// lie in `[0, 2ⁿ)`; the unsigned type already rules out negative
    /// targets.
    pub fn new(hash: ToyHash, target: u32) -> Result<Self> {
        if u64::from(target) >= hash.space_size() {
            return Err(Error::InvalidParam {
                name: "target",
                reason: format!(
                    "must be below the space size 2^{}, got {target}",
                    hash.n_bits
                ),
            });
        }
        let mut solutions = Vec::new();
        for nonce in 0..hash.space_size() as u32 {
            if hash.digest(nonce)? <= target {
                solutions.push(nonce);
            }
        }
        Ok(PowInstance {
            hash,
            target,
            solutions,
        })
    }

    pub fn hash(&self) -> &ToyHash {
        &self.hash
    }

    pub fn target(&self) -> u32 {
        self.target
    }

    /// Search-space size N.
    pub fn n(&self) -> u64 {
        self.hash.space_size()
    }

    /// Solution count M.
    pub fn m(&self) -> u64 {
        self.solutions.len() as u64
    }

    /// The solution nonces in ascending order.
    pub fn solutions(&self) -> &[u32] {
        &self.solutions
    }

    /// One digest evaluation: the verification side of proof-of-work.
    pub fn is_solution(&self, nonce: u32) -> Result<bool> {
        Ok(self.hash.digest(nonce)? <= self.target)
    }
}

/// Recounts the solutions by exhaustive scan, independent of the set stored
/// in the instance.
pub fn count_solutions(instance: &PowInstance) -> u64 {
    let hash = instance.hash();
    (0..hash.space_size() as u32)
        .filter(|&nonce| hash.digest(nonce).expect("nonce in range") <= instance.target())
        .count() as u64
}

/// The iteration count maximizing Grover's success probability:
/// `k* = round(π/(4θ) − 1/2)` with `θ = asin(√(M/N))`, rounded half away
/// from zero and floored at 0.
pub fn optimal_iterations(n: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::NoSolutions);
    }
    if n == 0 || m > n {
        return Err(Error::InvalidParam {
            name: "m",
            reason: format!("need 1 <= M <= N, got M = {m}, N = {n}"),
        });
    }
    let theta = (m as f64 / n as f64).sqrt().asin();
    let k = (std::f64::consts::PI / (4.0 * theta) - 0.5).round();
    Ok(if k < 0.0 { 0 } else { k as u64 })
}

/// Closed-form success probability after `iterations` Grover iterations:
/// `sin²((2k+1)·θ)`.
pub fn analytic_success_probability(n: u64, m: u64, iterations: u64) -> Result<f64> {
    if m == 0 {
        return Err(Error::NoSolutions);
    }
    if n == 0 || m > n {
        return Err(Error::InvalidParam {
            name: "m",
            reason: format!("need 1 <= M <= N, got M = {m}, N = {n}"),
        });
    }
    let theta = (m as f64 / n as f64).sqrt().asin();
    let angle = (2 * iterations + 1) as f64 * theta;
    Ok(angle.sin().powi(2))
}

/// A statevector over the nonce space.
///
/// Amplitudes are real: the oracle and diffusion operators used here map
/// the real subspace to itself, so the uniform initial state never acquires
/// an imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct GroverState {
    amplitudes: Vec<f64>,
    n_bits: u32,
    iteration_count: u32,
}

impl GroverState {
    /// The uniform superposition, amplitude `1/√N` everywhere.
    pub fn uniform(n_bits: u32) -> Result<Self> {
        validate_n_bits(n_bits)?;
        let size = 1usize << n_bits;
        let amp = 1.0 / (size as f64).sqrt();
        Ok(GroverState {
            amplitudes: vec![amp; size],
            n_bits,
            iteration_count: 0,
        })
    }

    pub fn iteration_count(&self) -> u32 {
        self.iteration_count
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    fn check_indices(&self, solutions: &[u32]) -> Result<()> {
        for &s in solutions {
            if s as usize >= self.amplitudes.len() {
                return Err(Error::NonceRange {
                    nonce: u64::from(s),
                    n_bits: self.n_bits,
                });
            }
        }
        Ok(())
    }

    /// One Grover iteration: phase-flip the solution amplitudes, then
    /// reflect every amplitude about the mean.
    pub fn iterate(&mut self, solutions: &[u32]) -> Result<()> {
        self.check_indices(solutions)?;
        for &s in solutions {
            self.amplitudes[s as usize] = -self.amplitudes[s as usize];
        }
        let mean = self.amplitudes.iter().sum::<f64>() / self.amplitudes.len() as f64;
        for a in &mut self.amplitudes {
            *a = 2.0 * mean - *a;
        }
        self.iteration_count += 1;
        Ok(())
    }

    /// Probability of measuring any solution index.
    pub fn success_probability(&self, solutions: &[u32]) -> Result<f64> {
        self.check_indices(solutions)?;
        Ok(solutions
            .iter()
            .map(|&s| self.amplitudes[s as usize].powi(2))
            .sum())
    }

    /// Σ amplitude², which unitarity keeps at 1.
    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum()
    }
}

/// Result of a simulated Grover run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverOutcome {
    pub success_probability: f64,
    pub queries_used: u64,
}

/// Runs `iterations` Grover iterations on the instance's statevector and
/// reports the probability of measuring a solution.
pub fn grover_search(instance: &PowInstance, iterations: u64) -> Result<GroverOutcome> {
    if instance.m() == 0 {
        return Err(Error::NoSolutions);
    }
    let mut state = GroverState::uniform(instance.hash().n_bits)?;
    for _ in 0..iterations {
        state.iterate(instance.solutions())?;
    }
    Ok(GroverOutcome {
        success_probability: state.success_probability(instance.solutions())?,
        queries_used: iterations,
    })
}

/// Result of a seeded classical scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicalOutcome {
    pub tries: u64,
    pub nonce: u32,
}

/// Classical baseline: draw uniformly random nonces until one verifies.
///
/// Draws are with replacement, so the try count is geometric with success
/// probability M/N and expectation N/M. A solution-free instance is
/// reported as exhausted after the N tries a full scan would have cost,
/// without actually spinning.
pub fn classical_search(instance: &PowInstance, seed: u64) -> Result<ClassicalOutcome> {
    if instance.m() == 0 {
        return Err(Error::Exhausted {
            tries: instance.n(),
        });
    }
    let mask = instance.n() - 1;
    let mut rng = rng_from_seed(seed);
    let mut tries = 0u64;
    loop {
        let nonce = (rng.next_u64() & mask) as u32;
        tries += 1;
        if instance.is_solution(nonce)? {
            return Ok(ClassicalOutcome { tries, nonce });
        }
    }
}

/// The verify-vs-solve asymmetry in one place.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvantageReport {
    /// Expected classical tries, N/M.
    pub classical_expected: f64,
    /// Optimal Grover iteration count k*, which scales as (π/4)·√(N/M).
    pub grover_queries: u64,
    /// Digest evaluations needed to verify a candidate: always one,
    /// independent of N.
    pub verify_ops: u64,
}

/// Packages expected classical cost, Grover cost, and verification cost
/// for an instance.
pub fn advantage_report(instance: &PowInstance) -> Result<AdvantageReport> {
    if instance.m() == 0 {
        return Err(Error::NoSolutions);
    }
    Ok(AdvantageReport {
        classical_expected: instance.n() as f64 / instance.m() as f64,
        grover_queries: optimal_iterations(instance.n(), instance.m())?,
        verify_ops: 1,
    })
}

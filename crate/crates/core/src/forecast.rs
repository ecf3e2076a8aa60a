//! Hash-rate growth curves, the quantum-vs-network crossover solver, and
//! polynomial extrapolation of difficulty history.
//!
//! A quantum device clocked at `c` cycles per second completes one
//! amplitude-amplified search over a window of `w` seconds and thereby does
//! the work of `(c·w)²` classical hashes in that window. Its *equivalent*
//! hash rate is therefore
//!
//! ```text
//! (c·w)² / w  =  c²·w
//! ```
//!
//! Both network capacity and device clocks are modeled as exponentials,
//! `R(y) = R₀·2^(y/p)` with doubling period `p` years. Because the quantum
//! equivalent rate is the *square* of the clock curve, it quadruples per
//! doubling period while the network merely doubles, so a device that starts
//! far behind still overtakes the network in finite time. Setting the two
//! curves equal gives the closed form solved by [`crossover_time`]:
//!
//! ```text
//! y = log₂(net₀ / qeq₀) / (2/p_q − 1/p_n)
//! ```
//!
//! which for a shared doubling period `p` collapses to
//! `y = p·log₂(net₀/qeq₀)`.
//!
//! The polynomial tooling ([`fit_polynomial`], [`extrapolate_difficulty`])
//! projects a historical difficulty series forward to a valuation date. The
//! least-squares solve shifts abscissae to their mean first, because raw
//! date-valued x (years in the thousands) makes the normal equations
//! hopelessly ill-conditioned; coefficients are expanded back to the raw
//! axis afterwards.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// An exponentially growing rate: `R(y) = initial·2^(y/p)`.
///
/// For quantum devices (`quadratic_equivalent = true`) the curve tracks the
/// clock rate and the effective hash rate is its square times the search
/// window, see [`GrowthModel::rate_at`].
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthModel {
    /// Rate at year zero: H/s for networks, clock cycles/s for quantum
    /// devices.
    pub initial_rate: f64,
    /// Years per doubling of the underlying rate.
    pub doubling_period_years: f64,
    /// True when the effective hash rate is the square of the growth curve.
    pub quadratic_equivalent: bool,
}

/// Default doubling period in years. The reference crossover figure implies
/// roughly 27 years from a 130 EH/s network and a 40 MHz quantum clock but
/// states no growth rate; 1.66 years per doubling is the value that
/// reproduces the figure and is used here as a documented default rather
/// than an asserted fact.
pub const DEFAULT_DOUBLING_PERIOD_YEARS: f64 = 1.66;

/// Default amplitude-amplification window in seconds.
pub const DEFAULT_WINDOW_S: f64 = 1.0;

impl GrowthModel {
    /// A linearly accounted rate (networks, classical devices).
    pub fn linear(initial_rate: f64, doubling_period_years: f64) -> Self {
        GrowthModel {
            initial_rate,
            doubling_period_years,
            quadratic_equivalent: false,
        }
    }

    /// A clock curve whose effective hash rate is its square.
    pub fn quadratic(initial_rate: f64, doubling_period_years: f64) -> Self {
        GrowthModel {
            initial_rate,
            doubling_period_years,
            quadratic_equivalent: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.initial_rate.is_finite() && self.initial_rate > 0.0) {
            return Err(Error::InvalidParam {
                name: "initial_rate",
                reason: format!("must be > 0, got {}", self.initial_rate),
            });
        }
        if !(self.doubling_period_years.is_finite() && self.doubling_period_years > 0.0) {
            return Err(Error::InvalidParam {
                name: "doubling_period_years",
                reason: format!("must be > 0, got {}", self.doubling_period_years),
            });
        }
        Ok(())
    }

    /// Effective hash rate `years` after year zero.
    ///
    /// Linear models return `initial·2^(y/p)` and ignore the window;
    /// quadratic models grow the clock first and then square it,
    /// `(initial·2^(y/p))²·window`.
    pub fn rate_at(&self, years: f64, window_s: f64) -> f64 {
        let grown = self.initial_rate * (years / self.doubling_period_years).exp2();
        if self.quadratic_equivalent {
            grown * grown * window_s
        } else {
            grown
        }
    }
}

/// One sample of the two growth curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverPoint {
    pub year: f64,
    pub network_rate_hps: f64,
    pub quantum_equivalent_hps: f64,
}

/// Output of [`crossover_time`].
#[derive(Debug, Clone, PartialEq)]
pub struct CrossoverResult {
    /// Closed-form years until the quantum equivalent rate reaches the
    /// network rate; zero when already crossed.
    pub years_until_crossover: f64,
    /// True when the quantum side already matches or exceeds the network at
    /// year zero.
    pub already_crossed: bool,
    /// Curve samples from year zero through the first sample at or past the
    /// crossover.
    pub series: Vec<CrossoverPoint>,
}

/// Equivalent hash rate of a quantum device: `(clock·window)²/window`,
/// i.e. `clock²·window`.
pub fn equivalent_hash_rate(clock_hz: f64, window_s: f64) -> Result<f64> {
    if !(clock_hz.is_finite() && clock_hz > 0.0) {
        return Err(Error::InvalidParam {
            name: "clock_hz",
            reason: format!("must be > 0, got {clock_hz}"),
        });
    }
    if !(window_s.is_finite() && window_s > 0.0) {
        return Err(Error::InvalidParam {
            name: "window_s",
            reason: format!("must be > 0, got {window_s}"),
        });
    }
    let rate = clock_hz * clock_hz * window_s;
    if !rate.is_finite() {
        return Err(Error::NonFinite {
            context: "equivalent_hash_rate",
        });
    }
    Ok(rate)
}

/// Solves for the smallest `y ≥ 0` at which the quantum equivalent rate
/// reaches the network rate, and samples both curves up to that point.
///
/// The network model must be linear and the quantum model quadratic. When
/// the quantum side already dominates at year zero the result is
/// `already_crossed = true` with zero years. When it is behind *and* grows
/// too slowly to ever catch up (`2/p_q ≤ 1/p_n`) the answer is
/// [`Error::NoCrossover`].
pub fn crossover_time(
    network: &GrowthModel,
    quantum: &GrowthModel,
    step_years: f64,
    window_s: f64,
) -> Result<CrossoverResult> {
    network.validate()?;
    quantum.validate()?;
    if network.quadratic_equivalent {
        return Err(Error::InvalidParam {
            name: "network",
            reason: "expected a linear growth model".into(),
        });
    }
    if !quantum.quadratic_equivalent {
        return Err(Error::InvalidParam {
            name: "quantum",
            reason: "expected a quadratic growth model".into(),
        });
    }
    if !(step_years.is_finite() && step_years > 0.0) {
        return Err(Error::InvalidParam {
            name: "step_years",
            reason: format!("must be > 0, got {step_years}"),
        });
    }
    if !(window_s.is_finite() && window_s > 0.0) {
        return Err(Error::InvalidParam {
            name: "window_s",
            reason: format!("must be > 0, got {window_s}"),
        });
    }

    let sample = |year: f64| CrossoverPoint {
        year,
        network_rate_hps: network.rate_at(year, window_s),
        quantum_equivalent_hps: quantum.rate_at(year, window_s),
    };

    let start = sample(0.0);
    if start.quantum_equivalent_hps >= start.network_rate_hps {
        return Ok(CrossoverResult {
            years_until_crossover: 0.0,
            already_crossed: true,
            series: vec![start],
        });
    }

    // The equivalent rate gains 2/p_q doublings per year against the
    // network's 1/p_n; the gap of log2(net0/qeq0) doublings closes at the
    // net pace `a`.
    let gap = (start.network_rate_hps / start.quantum_equivalent_hps).log2();
    let pace = 2.0 / quantum.doubling_period_years - 1.0 / network.doubling_period_years;
    if pace <= 0.0 {
        return Err(Error::NoCrossover);
    }
    let years = gap / pace;
    if !years.is_finite() {
        return Err(Error::NonFinite {
            context: "crossover_time",
        });
    }

    let mut series: Vec<CrossoverPoint> = (0..=(years / step_years).ceil() as u64)
        .map(|k| sample(k as f64 * step_years))
        .collect();
    // Rounding in the curve evaluation can leave the nominally-crossing
    // sample a hair short; extend until the series actually crosses.
    while {
        let last = series.last().expect("series starts non-empty");
        last.quantum_equivalent_hps < last.network_rate_hps
    } {
        let next = series.len() as f64 * step_years;
        series.push(sample(next));
    }

    Ok(CrossoverResult {
        years_until_crossover: years,
        already_crossed: false,
        series,
    })
}

/// Samples a growth curve at `0, step, 2·step, …` up to the horizon
/// (inclusive when the horizon is a whole number of steps).
pub fn extrapolate_series(
    model: &GrowthModel,
    horizon_years: f64,
    step_years: f64,
    window_s: f64,
) -> Result<Vec<(f64, f64)>> {
    model.validate()?;
    if !(step_years.is_finite() && step_years > 0.0) {
        return Err(Error::InvalidParam {
            name: "step_years",
            reason: format!("must be > 0, got {step_years}"),
        });
    }
    if !(horizon_years.is_finite() && horizon_years >= step_years) {
        return Err(Error::InvalidParam {
            name: "horizon_years",
            reason: format!("must be >= step_years, got {horizon_years}"),
        });
    }
    if !(window_s.is_finite() && window_s > 0.0) {
        return Err(Error::InvalidParam {
            name: "window_s",
            reason: format!("must be > 0, got {window_s}"),
        });
    }
    let steps = (horizon_years / step_years * (1.0 + 1e-12)).floor() as u64;
    Ok((0..=steps)
        .map(|k| {
            let y = k as f64 * step_years;
            (y, model.rate_at(y, window_s))
        })
        .collect())
}

/// A fitted polynomial `y = Σ coefficients[j]·x^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFit {
    pub degree: usize,
    /// Ascending powers of raw (unshifted) x.
    pub coefficients: Vec<f64>,
    /// Root-mean-square residual over the fitted points.
    pub residual_rms: f64,
}

impl PolyFit {
    /// Wraps explicit coefficients (ascending powers) as an exact fit.
    pub fn from_coefficients(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidParam {
                name: "coefficients",
                reason: "must be non-empty".into(),
            });
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                context: "PolyFit::from_coefficients",
            });
        }
        Ok(PolyFit {
            degree: coefficients.len() - 1,
            coefficients,
            residual_rms: 0.0,
        })
    }

    /// Horner evaluation at `x`.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// Ordinary least-squares polynomial fit.
///
/// Abscissae are shifted to their mean before the solve so that date-valued
/// x does not wreck the conditioning of the design matrix; the returned
/// coefficients are expanded back to raw x. Requires at least `degree + 1`
/// points; a rank-deficient design (for example duplicate x values beyond
/// what the degree supports) is reported as [`Error::SingularFit`].
pub fn fit_polynomial(points: &[(f64, f64)], degree: usize) -> Result<PolyFit> {
    let n = points.len();
    if n < degree + 1 {
        return Err(Error::Underdetermined { points: n, degree });
    }
    if points.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::NonFinite {
            context: "fit_polynomial",
        });
    }

    let x_mean = points.iter().map(|p| p.0).sum::<f64>() / n as f64;
    let design = DMatrix::from_fn(n, degree + 1, |i, j| (points[i].0 - x_mean).powi(j as i32));
    let rhs = DVector::from_iterator(n, points.iter().map(|p| p.1));

    let svd = design.clone().svd(true, true);
    let max_sv = svd.singular_values.max();
    let tol = max_sv * n.max(degree + 1) as f64 * f64::EPSILON;
    if svd.rank(tol) < degree + 1 {
        return Err(Error::SingularFit);
    }
    let shifted = svd.solve(&rhs, tol).map_err(|_| Error::SingularFit)?;

    let fitted = &design * &shifted;
    let rss: f64 = (0..n).map(|i| (rhs[i] - fitted[i]).powi(2)).sum();
    let residual_rms = (rss / n as f64).sqrt();

    Ok(PolyFit {
        degree,
        coefficients: expand_about(shifted.as_slice(), x_mean),
        residual_rms,
    })
}

/// Rewrites `Σ c_k·(x − center)^k` as ascending powers of raw x via the
/// binomial theorem.
fn expand_about(shifted: &[f64], center: f64) -> Vec<f64> {
    let mut raw = vec![0.0; shifted.len()];
    for (k, &c) in shifted.iter().enumerate() {
        for j in 0..=k {
            raw[j] += c * binomial(k, j) * (-center).powi((k - j) as i32);
        }
    }
    raw
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Evaluates a fitted difficulty curve at a date.
///
/// Difficulty must be positive, so a fit that dips to zero or below at the
/// requested date is a domain error suggesting a different degree or date
/// range rather than a value to propagate.
pub fn extrapolate_difficulty(fit: &PolyFit, date_x: f64) -> Result<f64> {
    if fit.coefficients.len() != fit.degree + 1 {
        return Err(Error::InvalidParam {
            name: "fit",
            reason: format!(
                "coefficient count {} does not match degree {}",
                fit.coefficients.len(),
                fit.degree
            ),
        });
    }
    let value = fit.evaluate(date_x);
    if !value.is_finite() {
        return Err(Error::NonFinite {
            context: "extrapolate_difficulty",
        });
    }
    if value <= 0.0 {
        return Err(Error::NegativeExtrapolation { value });
    }
    Ok(value)
}

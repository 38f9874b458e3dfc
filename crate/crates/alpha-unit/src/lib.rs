//! Alpha-Unit distribution toolkit.
//!
//! The Alpha-Unit AU(α) distribution lives on the unit interval (0, 1] and is
//! generated by a chain of transformations starting from the bimodal normal
//! family: if B ~ BN(1) (density b²φ(b)), then α|B| is bimodal half-normal and
//! X = e^{−α|B|} ~ AU(α). Because B² ~ χ²₃, the whole family is tied to the
//! chi-square distribution, which gives closed forms for the CDF, the moments,
//! the sufficient statistic, and both point estimators of α.
//!
//! The crate provides:
//!
//! - [`numeric`] — the special-function kernels (scaled normal tail, log-gamma,
//!   regularized incomplete gamma) and a bracketed root finder,
//! - [`bn`] — the bimodal normal BN(k) distribution,
//! - [`au`] — AU(α): density, CDF, quantile, moments, mode, MGF, and highest
//!   density intervals,
//! - [`sampling`] — seeded, stream-splittable random generation for χ²₃,
//!   BN(1), BHN(α), and AU(α),
//! - [`estimation`] — MLE and UMVUE for α with Wald and delta-method
//!   confidence intervals,
//! - [`competitors`] — six comparison unit distributions fitted by numerical
//!   maximum likelihood, ranked by AIC/BIC,
//! - [`simulation`] — a reproducible Monte Carlo harness for estimator bias,
//!   MSE, and confidence-interval length,
//! - [`spc`] — control-chart limits (equal-tailed or HDI) and series
//!   evaluation,
//! - [`data`] — validated unit samples, min-max standardization, and the
//!   boundary squeeze.
//!
//! # Example
//!
//! ```
//! use alpha_unit::au::AlphaUnit;
//!
//! let au = AlphaUnit::new(1.0).unwrap();
//! let x = au.quantile(0.5).unwrap();
//! assert!((au.cdf(x).unwrap() - 0.5).abs() < 1e-10);
//! ```

// Guards are written `!(x > 0.0)` so NaN fails validation along with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod au;
pub mod bn;
pub mod competitors;
pub mod data;
pub mod estimation;
pub mod numeric;
pub mod sampling;
pub mod simulation;
pub mod spc;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument was outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The root-finder bracket does not straddle a sign change.
    #[error("no sign change on bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    /// An iterative routine ran out of iterations.
    #[error("failed to converge within {max_iter} iterations")]
    NoConvergence { max_iter: usize },

    /// A sample contained no observations.
    #[error("sample is empty")]
    EmptySample,

    /// A value fell outside the unit interval (0, 1].
    #[error("value {value} at position {index} is outside (0, 1]; apply the boundary squeeze if the data touch 0 or 1")]
    OutOfUnitRange { index: usize, value: f64 },

    /// All observations equal 1, so Σ[ln xᵢ]² = 0 and α is unidentified.
    #[error("degenerate sample: every observation is 1, the statistic Σ[ln x]² vanishes")]
    DegenerateSample,

    /// An observation sits on the support boundary where the log-density is −∞.
    #[error("observation {value} at position {index} lies on the boundary; likelihood-based quantities need data strictly inside (0, 1) — apply the boundary squeeze")]
    BoundaryValue { index: usize, value: f64 },

    /// Min-max standardization of constant input.
    #[error("degenerate range: all input values are identical, min-max transform is undefined")]
    DegenerateRange,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

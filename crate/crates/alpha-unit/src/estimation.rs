//! Inference for the AU(α) parameter.
//!
//! T(X) = Σ [ln Xᵢ]² is complete and sufficient (the family is one-parameter
//! exponential), and T/α² ~ χ²_{3n}. That gives a closed-form MLE
//! α̂ = √(T/(3n)), an exactly unbiased estimator through the chi moment
//! E[√(χ²_m)] = √2·Γ((m+1)/2)/Γ(m/2), Fisher information 6n/α², and the two
//! confidence intervals: the plain Wald interval (which can cross zero) and
//! the delta-method interval on ln α (which cannot).

use crate::data::UnitSample;
use crate::numeric::{log_gamma, std_normal_quantile};
use crate::{Error, Result};
use serde::Serialize;

/// The complete sufficient statistic T = Σ[ln xᵢ]² with its sample size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SufficientStat {
    pub t_value: f64,
    pub n: usize,
}

/// Which point estimator produced a fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EstimatorMethod {
    Mle,
    Umvue,
}

/// A fitted AU(α) model with standard error, both interval variants, and
/// information criteria.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub alpha_hat: f64,
    pub method: EstimatorMethod,
    pub se: f64,
    pub ci_wald: (f64, f64),
    pub ci_delta: (f64, f64),
    pub conf_level: f64,
    pub loglik: f64,
    pub aic: f64,
    pub bic: f64,
    pub n: usize,
}

/// Σ[ln xᵢ]²; permutation-invariant, zero only when every xᵢ = 1.
pub fn sufficient_statistic(data: &UnitSample) -> SufficientStat {
    let t_value = data.values().iter().map(|x| x.ln().powi(2)).sum();
    SufficientStat { t_value, n: data.len() }
}

/// MLE α̂ = √(T/(3n)) from a precomputed statistic.
pub fn mle_from_stat(stat: &SufficientStat) -> Result<f64> {
    if stat.t_value <= 0.0 {
        return Err(Error::DegenerateSample);
    }
    Ok((stat.t_value / (3.0 * stat.n as f64)).sqrt())
}

/// Maximum-likelihood estimate of α.
pub fn mle_alpha(data: &UnitSample) -> Result<f64> {
    mle_from_stat(&sufficient_statistic(data))
}

/// UMVUE S = Γ(3n/2)/(√2·Γ((3n+1)/2))·√T from a precomputed statistic.
///
/// The gamma ratio is evaluated in log space; Γ(3n/2) alone overflows past
/// n ≈ 100. Unbiasedness follows from E[√(χ²_{3n})] = √2·Γ((3n+1)/2)/Γ(3n/2)
/// and Lehmann–Scheffé upgrades it to minimum variance.
pub fn umvue_from_stat(stat: &SufficientStat) -> Result<f64> {
    if stat.t_value <= 0.0 {
        return Err(Error::DegenerateSample);
    }
    let half_3n = 1.5 * stat.n as f64;
    let log_ratio = log_gamma(half_3n)? - 0.5 * std::f64::consts::LN_2 - log_gamma(half_3n + 0.5)?;
    Ok(log_ratio.exp() * stat.t_value.sqrt())
}

/// Uniformly minimum-variance unbiased estimate of α.
pub fn umvue_alpha(data: &UnitSample) -> Result<f64> {
    umvue_from_stat(&sufficient_statistic(data))
}

/// Fisher information I(α) = 6n/α².
pub fn fisher_information(alpha: f64, n: usize) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
    }
    if n == 0 {
        return Err(Error::Domain("sample size must be at least 1".into()));
    }
    Ok(6.0 * n as f64 / (alpha * alpha))
}

fn check_ci_inputs(alpha_hat: f64, n: usize, conf_level: f64) -> Result<f64> {
    if !(alpha_hat > 0.0) || !alpha_hat.is_finite() {
        return Err(Error::Domain(format!("alpha_hat must be positive, got {alpha_hat}")));
    }
    if n == 0 {
        return Err(Error::Domain("sample size must be at least 1".into()));
    }
    if !(conf_level > 0.0 && conf_level < 1.0) {
        return Err(Error::Domain(format!("confidence level must lie in (0,1), got {conf_level}")));
    }
    std_normal_quantile(0.5 * (1.0 + conf_level))
}

/// Wald interval α̂ ∓ z·α̂/√(6n).
///
/// The lower limit can be negative — that defect is what the delta interval
/// repairs — so no positivity is enforced here.
pub fn wald_ci(alpha_hat: f64, n: usize, conf_level: f64) -> Result<(f64, f64)> {
    let z = check_ci_inputs(alpha_hat, n, conf_level)?;
    let half_width = z * alpha_hat / (6.0 * n as f64).sqrt();
    Ok((alpha_hat - half_width, alpha_hat + half_width))
}

/// Delta-method interval [α̂·e^{−z/√(6n)}, α̂·e^{+z/√(6n)}] from the normal
/// approximation on ln α̂; the lower limit is positive by construction.
pub fn delta_ci(alpha_hat: f64, n: usize, conf_level: f64) -> Result<(f64, f64)> {
    let z = check_ci_inputs(alpha_hat, n, conf_level)?;
    let shift = z / (6.0 * n as f64).sqrt();
    Ok((alpha_hat * (-shift).exp(), alpha_hat * shift.exp()))
}

/// Log-likelihood ℓ(α) = Σ ln f(xᵢ | α), with the full normal-density
/// constant included.
///
/// Rejects samples touching x = 1, where the density vanishes and AIC/BIC
/// would be undefined; the error points at the boundary squeeze.
pub fn log_likelihood(data: &UnitSample, alpha: f64) -> Result<f64> {
    let au = crate::au::AlphaUnit::new(alpha)?;
    let mut total = 0.0;
    for (index, &value) in data.values().iter().enumerate() {
        if value >= 1.0 {
            return Err(Error::BoundaryValue { index, value });
        }
        total += au.log_pdf(value)?;
    }
    Ok(total)
}

/// The pivot W = T(X)/α², distributed χ²_{3n} when the data are AU(α).
pub fn pivot_wn(data: &UnitSample, alpha_true: f64) -> Result<f64> {
    if !(alpha_true > 0.0) || !alpha_true.is_finite() {
        return Err(Error::Domain(format!("alpha must be positive, got {alpha_true}")));
    }
    Ok(sufficient_statistic(data).t_value / (alpha_true * alpha_true))
}

/// Full AU fit: point estimate by the requested method, standard error
/// α̂/√(6n), Wald and delta intervals, log-likelihood, and AIC/BIC for the
/// one-parameter model.
pub fn fit_alpha_unit(
    data: &UnitSample,
    method: EstimatorMethod,
    conf_level: f64,
) -> Result<FitResult> {
    let stat = sufficient_statistic(data);
    let alpha_hat = match method {
        EstimatorMethod::Mle => mle_from_stat(&stat)?,
        EstimatorMethod::Umvue => umvue_from_stat(&stat)?,
    };
    let se = alpha_hat / (6.0 * stat.n as f64).sqrt();
    let ci_wald = wald_ci(alpha_hat, stat.n, conf_level)?;
    let ci_delta = delta_ci(alpha_hat, stat.n, conf_level)?;
    let loglik = log_likelihood(data, alpha_hat)?;
    Ok(FitResult {
        alpha_hat,
        method,
        se,
        ci_wald,
        ci_delta,
        conf_level,
        loglik,
        aic: 2.0 - 2.0 * loglik,
        bic: (stat.n as f64).ln() - 2.0 * loglik,
        n: stat.n,
    })
}

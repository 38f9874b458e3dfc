//! Comparison unit distributions and numerical maximum-likelihood fitting.
//!
//! Six families beside AU(α), with densities on (0, 1):
//!
//! - `BE(μ, σ)` — mean/dispersion beta with shapes a = μ(1−σ²)/σ² and
//!   b = (1−μ)(1−σ²)/σ², μ, σ ∈ (0, 1),
//! - `KUM(μ, σ)` — Kumaraswamy f(x) = μσ x^{μ−1}(1 − x^μ)^{σ−1}, shapes > 0,
//! - `LOGITNO(μ, σ)` — logit(X) normal, μ ∈ (0, 1) the median, σ > 0,
//! - `SIMPLEX(μ, σ)` — f(x) = [2πσ²(x(1−x))³]^{−1/2} e^{−d(x;μ)/(2σ²)} with
//!   d = (x − μ)²/(x(1−x)μ²(1−μ)²),
//! - `UHN(σ)` — unit half-normal f(x) = √(2/π)/(σ(1−x)²) e^{−x²/(2σ²(1−x)²)},
//! - `ULINDLEY(θ)` — f(x) = θ²/(1+θ)·(1−x)^{−3} e^{−θx/(1−x)}, reported with
//!   its mean scale μ = 1/(1+θ).
//!
//! Fitting maximizes the log-likelihood with Nelder–Mead on an unconstrained
//! reparameterization (log for positive parameters, logit for unit-interval
//! ones) so iterates can never leave the domain. Standard errors come from
//! the inverse observed information, differenced numerically at the optimum.

use crate::data::UnitSample;
use crate::estimation;
use crate::numeric::{log_gamma, FRAC_1_SQRT_2PI};
use crate::{Error, Result};
use serde::Serialize;

/// The unit-distribution families of the comparison set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum UnitFamily {
    AlphaUnit,
    Beta,
    Kumaraswamy,
    LogitNormal,
    Simplex,
    UnitHalfNormal,
    UnitLindley,
}

impl UnitFamily {
    pub const ALL: [UnitFamily; 7] = [
        UnitFamily::AlphaUnit,
        UnitFamily::Beta,
        UnitFamily::Kumaraswamy,
        UnitFamily::LogitNormal,
        UnitFamily::Simplex,
        UnitFamily::UnitHalfNormal,
        UnitFamily::UnitLindley,
    ];

    /// Short table label.
    pub fn name(&self) -> &'static str {
        match self {
            UnitFamily::AlphaUnit => "AU",
            UnitFamily::Beta => "BE",
            UnitFamily::Kumaraswamy => "KUM",
            UnitFamily::LogitNormal => "LOGITNO",
            UnitFamily::Simplex => "SIMPLEX",
            UnitFamily::UnitHalfNormal => "UHN",
            UnitFamily::UnitLindley => "ULINDLEY",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "AU" => Some(UnitFamily::AlphaUnit),
            "BE" | "BETA" => Some(UnitFamily::Beta),
            "KUM" | "KUMARASWAMY" => Some(UnitFamily::Kumaraswamy),
            "LOGITNO" | "LOGIT-NORMAL" | "LOGITNORMAL" => Some(UnitFamily::LogitNormal),
            "SIMPLEX" => Some(UnitFamily::Simplex),
            "UHN" => Some(UnitFamily::UnitHalfNormal),
            "ULINDLEY" | "UNIT-LINDLEY" | "UNITLINDLEY" => Some(UnitFamily::UnitLindley),
            _ => None,
        }
    }

    pub fn param_count(&self) -> usize {
        self.param_names().len()
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            UnitFamily::AlphaUnit => &["alpha"],
            UnitFamily::Beta
            | UnitFamily::Kumaraswamy
            | UnitFamily::LogitNormal
            | UnitFamily::Simplex => &["mu", "sigma"],
            UnitFamily::UnitHalfNormal => &["sigma"],
            UnitFamily::UnitLindley => &["theta"],
        }
    }

    /// Transform kinds mapping ℝ onto each parameter's open domain.
    fn transforms(&self) -> &'static [ParamTransform] {
        use ParamTransform::{Log, Logit};
        match self {
            UnitFamily::AlphaUnit => &[Log],
            UnitFamily::Beta => &[Logit, Logit],
            UnitFamily::Kumaraswamy => &[Log, Log],
            UnitFamily::LogitNormal => &[Logit, Log],
            UnitFamily::Simplex => &[Logit, Log],
            UnitFamily::UnitHalfNormal => &[Log],
            UnitFamily::UnitLindley => &[Log],
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum ParamTransform {
    /// ℝ → (0, ∞)
    Log,
    /// ℝ → (0, 1)
    Logit,
}

impl ParamTransform {
    /// ℝ → parameter domain.
    fn constrain(self, eta: f64) -> f64 {
        match self {
            ParamTransform::Log => eta.exp(),
            ParamTransform::Logit => 1.0 / (1.0 + (-eta).exp()),
        }
    }

    /// parameter domain → ℝ.
    fn unconstrain(self, theta: f64) -> f64 {
        match self {
            ParamTransform::Log => theta.ln(),
            ParamTransform::Logit => (theta / (1.0 - theta)).ln(),
        }
    }
}

/// One fitted comparison model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompetitorFit {
    pub family: UnitFamily,
    pub family_name: String,
    pub params: Vec<f64>,
    /// Standard errors from the inverse observed information; absent when
    /// the numerical information matrix is not positive definite.
    pub se: Option<Vec<f64>>,
    pub loglik: f64,
    pub aic: f64,
    pub bic: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Set when the optimum sits at an extreme of the unconstrained scale,
    /// i.e. the likelihood is boundary-attracted.
    pub boundary: bool,
}

fn check_params(family: UnitFamily, params: &[f64]) -> Result<()> {
    if params.len() != family.param_count() {
        return Err(Error::Domain(format!(
            "{} takes {} parameter(s), got {}",
            family.name(),
            family.param_count(),
            params.len()
        )));
    }
    for (i, (&p, tr)) in params.iter().zip(family.transforms()).enumerate() {
        let ok = match tr {
            ParamTransform::Log => p > 0.0 && p.is_finite(),
            ParamTransform::Logit => p > 0.0 && p < 1.0,
        };
        if !ok {
            return Err(Error::Domain(format!(
                "{} parameter {} = {p} outside its domain",
                family.name(),
                family.param_names()[i]
            )));
        }
    }
    Ok(())
}

/// Log-density of `family` at x ∈ (0, 1).
pub fn unit_log_pdf(family: UnitFamily, params: &[f64], x: f64) -> Result<f64> {
    check_params(family, params)?;
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("unit densities need x in (0, 1), got {x}")));
    }
    Ok(log_pdf_unchecked(family, params, x))
}

/// Density of `family` at x ∈ (0, 1).
pub fn unit_pdf(family: UnitFamily, params: &[f64], x: f64) -> Result<f64> {
    Ok(unit_log_pdf(family, params, x)?.exp())
}

fn log_pdf_unchecked(family: UnitFamily, params: &[f64], x: f64) -> f64 {
    match family {
        UnitFamily::AlphaUnit => {
            let alpha = params[0];
            let lx = x.ln();
            -lx * lx / (2.0 * alpha * alpha) - 3.0 * alpha.ln()
                + (2.0 * lx * lx).ln()
                - lx
                + FRAC_1_SQRT_2PI.ln()
        }
        UnitFamily::Beta => {
            let (mu, sigma) = (params[0], params[1]);
            let scale = (1.0 - sigma * sigma) / (sigma * sigma);
            let a = mu * scale;
            let b = (1.0 - mu) * scale;
            let log_beta = log_gamma(a).unwrap() + log_gamma(b).unwrap() - log_gamma(a + b).unwrap();
            (a - 1.0) * x.ln() + (b - 1.0) * (1.0 - x).ln() - log_beta
        }
        UnitFamily::Kumaraswamy => {
            let (mu, sigma) = (params[0], params[1]);
            // ln(1 − x^μ) through expm1 keeps accuracy as x → 1
            let one_minus_pow = -(mu * x.ln()).exp_m1();
            mu.ln() + sigma.ln() + (mu - 1.0) * x.ln() + (sigma - 1.0) * one_minus_pow.ln()
        }
        UnitFamily::LogitNormal => {
            let (mu, sigma) = (params[0], params[1]);
            let logit = |v: f64| (v / (1.0 - v)).ln();
            let z = (logit(x) - logit(mu)) / sigma;
            FRAC_1_SQRT_2PI.ln() - 0.5 * z * z - sigma.ln() - x.ln() - (1.0 - x).ln()
        }
        UnitFamily::Simplex => {
            let (mu, sigma) = (params[0], params[1]);
            let v = x * (1.0 - x);
            let dev = (x - mu) * (x - mu) / (v * mu * mu * (1.0 - mu) * (1.0 - mu));
            -0.5 * ((2.0 * std::f64::consts::PI).ln() + 2.0 * sigma.ln() + 3.0 * v.ln())
                - dev / (2.0 * sigma * sigma)
        }
        UnitFamily::UnitHalfNormal => {
            let sigma = params[0];
            let t = x / (1.0 - x);
            0.5 * (2.0 / std::f64::consts::PI).ln() - sigma.ln() - 2.0 * (1.0 - x).ln()
                - t * t / (2.0 * sigma * sigma)
        }
        UnitFamily::UnitLindley => {
            let theta = params[0];
            2.0 * theta.ln() - (1.0 + theta).ln() - 3.0 * (1.0 - x).ln() - theta * x / (1.0 - x)
        }
    }
}

fn log_likelihood(family: UnitFamily, params: &[f64], data: &UnitSample) -> f64 {
    let mut total = 0.0;
    for &x in data.values() {
        let l = log_pdf_unchecked(family, params, x);
        if !l.is_finite() {
            return f64::NEG_INFINITY;
        }
        total += l;
    }
    total
}

fn boundary_check(data: &UnitSample) -> Result<()> {
    for (index, &value) in data.values().iter().enumerate() {
        if value >= 1.0 {
            return Err(Error::BoundaryValue { index, value });
        }
    }
    Ok(())
}

/// Moment-style starting values on the original scale.
fn starting_values(family: UnitFamily, data: &UnitSample) -> Vec<f64> {
    let n = data.len() as f64;
    let mean = data.values().iter().sum::<f64>() / n;
    let var = data.values().iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let mu0 = mean.clamp(0.01, 0.99);
    match family {
        // A deliberately neutral start: the generic route must find the
        // maximum on its own, independently of the closed-form estimate.
        UnitFamily::AlphaUnit => vec![1.0],
        UnitFamily::Beta => {
            let s = (var / (mu0 * (1.0 - mu0))).sqrt().clamp(0.05, 0.95);
            vec![mu0, s]
        }
        UnitFamily::Kumaraswamy => vec![1.0, 1.0],
        UnitFamily::LogitNormal => {
            let logits: Vec<f64> = data.values().iter().map(|x| (x / (1.0 - x)).ln()).collect();
            let m = logits.iter().sum::<f64>() / n;
            let s2 = logits.iter().map(|l| (l - m).powi(2)).sum::<f64>() / n;
            vec![1.0 / (1.0 + (-m).exp()), s2.sqrt().max(1e-3)]
        }
        UnitFamily::Simplex => {
            // given μ, the σ score equation solves to σ² = mean deviance
            let dev = data
                .values()
                .iter()
                .map(|&x| {
                    (x - mu0) * (x - mu0)
                        / (x * (1.0 - x) * mu0 * mu0 * (1.0 - mu0) * (1.0 - mu0))
                })
                .sum::<f64>()
                / n;
            vec![mu0, dev.sqrt().max(1e-3)]
        }
        UnitFamily::UnitHalfNormal => {
            let t2 = data.values().iter().map(|&x| (x / (1.0 - x)).powi(2)).sum::<f64>() / n;
            vec![t2.sqrt().max(1e-6)]
        }
        UnitFamily::UnitLindley => {
            // root of Sθ² + (S − n)θ − 2n = 0 with S = Σ x/(1−x)
            let s: f64 = data.values().iter().map(|&x| x / (1.0 - x)).sum();
            let disc = ((s - n) * (s - n) + 8.0 * s * n).sqrt();
            vec![((n - s) + disc) / (2.0 * s)]
        }
    }
}

const NM_MAX_ITER: usize = 4000;
/// Relative objective spread below which a fit is declared converged.
const NM_FTOL: f64 = 1e-10;
/// The search itself runs to a tighter spread so the argument is resolved
/// well past the convergence-flag threshold (the objective is locally
/// quadratic, so an f-spread of 1e-13 pins the argument to ~1e-7).
const NM_STOP: f64 = 1e-13;

/// Nelder–Mead minimization with standard (1, 2, ½, ½) coefficients.
///
/// Returns (argmin, min, iterations, converged) where convergence means the
/// simplex's relative objective spread fell below `NM_FTOL`.
fn nelder_mead<F>(f: F, start: &[f64]) -> (Vec<f64>, f64, usize, bool)
where
    F: Fn(&[f64]) -> f64,
{
    let dim = start.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(start.to_vec());
    for i in 0..dim {
        let mut v = start.to_vec();
        v[i] += if v[i].abs() > 1.0 { 0.25 * v[i].abs() } else { 0.25 };
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < NM_MAX_ITER {
        iterations += 1;
        // order best → worst
        let mut idx: Vec<usize> = (0..=dim).collect();
        idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(std::cmp::Ordering::Equal));
        let best = idx[0];
        let worst = idx[dim];
        let second_worst = idx[dim - 1];

        let spread = (values[worst] - values[best]).abs();
        let scale = values[best].abs().max(1.0);
        if spread <= NM_FTOL * scale {
            converged = true;
        }
        if spread <= NM_STOP * scale {
            break;
        }

        // centroid of all but the worst
        let mut centroid = vec![0.0; dim];
        for (i, v) in simplex.iter().enumerate() {
            if i == worst {
                continue;
            }
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / dim as f64;
            }
        }

        let point_along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = point_along(1.0);
        let f_reflected = f(&reflected);
        if f_reflected < values[best] {
            let expanded = point_along(2.0);
            let f_expanded = f(&expanded);
            if f_expanded < f_reflected {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if f_reflected < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }
        let contracted = if f_reflected < values[worst] { point_along(0.5) } else { point_along(-0.5) };
        let f_contracted = f(&contracted);
        if f_contracted < values[worst].min(f_reflected) {
            simplex[worst] = contracted;
            values[worst] = f_contracted;
            continue;
        }
        // shrink toward the best vertex
        let best_point = simplex[best].clone();
        for (i, v) in simplex.iter_mut().enumerate() {
            if i == best {
                continue;
            }
            for (x, b) in v.iter_mut().zip(&best_point) {
                *x = b + 0.5 * (*x - b);
            }
            values[i] = f(v);
        }
    }

    let mut best = 0;
    for i in 1..=dim {
        if values[i] < values[best] {
            best = i;
        }
    }
    (simplex[best].clone(), values[best], iterations, converged)
}

/// Observed-information standard errors by central differences at the
/// optimum (relative step 1e-5). Returns `None` when the matrix is not
/// positive definite or the likelihood cannot be evaluated at a probe point.
fn observed_info_se(family: UnitFamily, params: &[f64], data: &UnitSample) -> Option<Vec<f64>> {
    let dim = params.len();
    let steps: Vec<f64> = params.iter().map(|p| 1e-5 * p.abs().max(1e-5)).collect();
    let eval = |p: &[f64]| -> Option<f64> {
        check_params(family, p).ok()?;
        let l = log_likelihood(family, p, data);
        l.is_finite().then_some(l)
    };
    let center = eval(params)?;
    let mut hessian = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        let mut plus = params.to_vec();
        let mut minus = params.to_vec();
        plus[i] += steps[i];
        minus[i] -= steps[i];
        let (lp, lm) = (eval(&plus)?, eval(&minus)?);
        hessian[i][i] = (lp - 2.0 * center + lm) / (steps[i] * steps[i]);
        for j in (i + 1)..dim {
            let mut pp = params.to_vec();
            let mut pm = params.to_vec();
            let mut mp = params.to_vec();
            let mut mm = params.to_vec();
            pp[i] += steps[i];
            pp[j] += steps[j];
            pm[i] += steps[i];
            pm[j] -= steps[j];
            mp[i] -= steps[i];
            mp[j] += steps[j];
            mm[i] -= steps[i];
            mm[j] -= steps[j];
            let v = (eval(&pp)? - eval(&pm)? - eval(&mp)? + eval(&mm)?) / (4.0 * steps[i] * steps[j]);
            hessian[i][j] = v;
            hessian[j][i] = v;
        }
    }
    // observed information = −Hessian of ℓ; invert 1×1 or 2×2
    match dim {
        1 => {
            let info = -hessian[0][0];
            (info > 0.0).then(|| vec![(1.0 / info).sqrt()])
        }
        2 => {
            let (a, b, d) = (-hessian[0][0], -hessian[0][1], -hessian[1][1]);
            let det = a * d - b * b;
            if a > 0.0 && det > 0.0 {
                Some(vec![(d / det).sqrt(), (a / det).sqrt()])
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Fit one family to the data by numerical maximum likelihood.
///
/// Needs every observation strictly inside (0, 1); non-convergence is
/// reported through the `converged` flag, not an error.
pub fn fit_model(family: UnitFamily, data: &UnitSample) -> Result<CompetitorFit> {
    boundary_check(data)?;
    let transforms = family.transforms();
    let start_domain = starting_values(family, data);
    let start_eta: Vec<f64> = start_domain
        .iter()
        .zip(transforms)
        .map(|(&p, tr)| tr.unconstrain(p))
        .collect();

    let objective = |eta: &[f64]| -> f64 {
        let params: Vec<f64> = eta.iter().zip(transforms).map(|(&e, tr)| tr.constrain(e)).collect();
        // Logit transforms saturate to exactly 0/1 for |eta| ≳ 37; treat any
        // saturated point as infeasible rather than evaluating there.
        if check_params(family, &params).is_err() {
            return f64::INFINITY;
        }
        let l = log_likelihood(family, &params, data);
        if l.is_finite() {
            -l
        } else {
            f64::INFINITY
        }
    };

    let (eta_hat, neg_loglik, iterations, converged) = nelder_mead(objective, &start_eta);
    let params: Vec<f64> = eta_hat.iter().zip(transforms).map(|(&e, tr)| tr.constrain(e)).collect();
    let loglik = -neg_loglik;
    let boundary = eta_hat.iter().any(|e| e.abs() > 15.0);
    let p = family.param_count() as f64;
    let n = data.len() as f64;
    let se = if converged && !boundary { observed_info_se(family, &params, data) } else { None };
    Ok(CompetitorFit {
        family,
        family_name: family.name().to_string(),
        params,
        se,
        loglik,
        aic: 2.0 * p - 2.0 * loglik,
        bic: p * n.ln() - 2.0 * loglik,
        converged,
        iterations,
        boundary,
    })
}

/// Fit every requested family and rank ascending by AIC, breaking ties by
/// BIC and then family name.
pub fn compare_models(data: &UnitSample, families: &[UnitFamily]) -> Result<Vec<CompetitorFit>> {
    if families.is_empty() {
        return Err(Error::Domain("at least one family is required".into()));
    }
    let mut fits = families
        .iter()
        .map(|&f| fit_model(f, data))
        .collect::<Result<Vec<_>>>()?;
    fits.sort_by(rank_order);
    Ok(fits)
}

/// Ranking comparator: AIC, then BIC, then family name.
pub fn rank_order(a: &CompetitorFit, b: &CompetitorFit) -> std::cmp::Ordering {
    a.aic
        .partial_cmp(&b.aic)
        .unwrap_or(std::cmp::Ordering::Equal)
        .then(a.bic.partial_cmp(&b.bic).unwrap_or(std::cmp::Ordering::Equal))
        .then(a.family.name().cmp(b.family.name()))
}

/// Closed-form AU MLE routed through [`estimation`], for cross-checking the
/// generic optimizer.
pub fn au_closed_form_alpha(data: &UnitSample) -> Result<f64> {
    estimation::mle_alpha(data)
}

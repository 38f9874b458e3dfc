//! Monte Carlo harness for the MLE/UMVUE comparison study.
//!
//! For every cell (α, n) of the grid, `repetitions` seeded AU(α) samples are
//! drawn, both estimators are computed from the shared sufficient statistic,
//! and the cell is summarized by average estimate, bias, MSE, and the
//! delta-method interval length (mean upper limit minus mean lower limit).
//! Per-repetition estimator differences are pooled per sample size for the
//! interquartile-range summary.
//!
//! Every repetition owns its own random stream keyed by (cell, repetition),
//! so cells can run in parallel and any subset of the grid reproduces
//! exactly.

use crate::au::AlphaUnit;
use crate::data::UnitSample;
use crate::estimation::{delta_ci, mle_from_stat, sufficient_statistic, umvue_from_stat, EstimatorMethod};
use crate::sampling::{sample_au, RandomStream};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

/// Monte Carlo study configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub alphas: Vec<f64>,
    pub ns: Vec<usize>,
    pub repetitions: usize,
    pub conf_level: f64,
    pub master_seed: u64,
}

impl SimConfig {
    /// The study grid: α ∈ {0.1, 0.3, 0.5, 0.7, 1.1, 1.5}, n ∈ {100, 200, 500},
    /// 1000 repetitions, 95% intervals.
    pub fn default_grid(master_seed: u64) -> Self {
        Self {
            alphas: vec![0.1, 0.3, 0.5, 0.7, 1.1, 1.5],
            ns: vec![100, 200, 500],
            repetitions: 1000,
            conf_level: 0.95,
            master_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() || self.ns.is_empty() {
            return Err(Error::Domain("simulation grid must not be empty".into()));
        }
        if self.alphas.iter().any(|a| !(*a > 0.0) || !a.is_finite()) {
            return Err(Error::Domain("all alphas must be positive".into()));
        }
        if self.ns.contains(&0) {
            return Err(Error::Domain("all sample sizes must be positive".into()));
        }
        if self.repetitions < 2 {
            return Err(Error::Domain("at least 2 repetitions are required".into()));
        }
        if !(self.conf_level > 0.0 && self.conf_level < 1.0) {
            return Err(Error::Domain(format!(
                "confidence level must lie in (0,1), got {}",
                self.conf_level
            )));
        }
        Ok(())
    }
}

/// Summary of one (α, n, estimator) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimCellResult {
    pub alpha: f64,
    pub n: usize,
    pub method: EstimatorMethod,
    pub avg_estimate: f64,
    pub bias: f64,
    pub mse: f64,
    /// Mean upper limit minus mean lower limit of the delta interval;
    /// reported for the MLE rows only.
    pub ci_length: Option<f64>,
}

/// Full study output: per-cell summaries plus the per-n IQR of the pooled
/// MLE − UMVUE differences.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyReport {
    pub cells: Vec<SimCellResult>,
    pub iqr_by_n: Vec<(usize, f64)>,
}

/// Average, bias, and MSE of a set of estimates against the true value.
pub fn summarize_estimates(alpha_true: f64, estimates: &[f64]) -> (f64, f64, f64) {
    let n = estimates.len() as f64;
    let avg = estimates.iter().sum::<f64>() / n;
    let bias = estimates.iter().map(|e| e - alpha_true).sum::<f64>() / n;
    let mse = estimates.iter().map(|e| (e - alpha_true).powi(2)).sum::<f64>() / n;
    (avg, bias, mse)
}

struct CellOutput {
    mle: SimCellResult,
    umvue: SimCellResult,
    n: usize,
    differences: Vec<f64>,
}

fn run_cell(config: &SimConfig, cell_index: usize, alpha: f64, n: usize) -> Result<CellOutput> {
    let params = AlphaUnit::new(alpha)?;
    let reps = config.repetitions;
    let mut mles = Vec::with_capacity(reps);
    let mut umvues = Vec::with_capacity(reps);
    let mut differences = Vec::with_capacity(reps);
    let mut sum_lower = 0.0;
    let mut sum_upper = 0.0;
    for rep in 0..reps {
        let stream_id = ((cell_index as u64) << 32) | rep as u64;
        let mut stream = RandomStream::new(config.master_seed, stream_id);
        let batch = sample_au(params, &mut stream, n)?;
        let data = UnitSample::from_values(batch.values)?;
        let stat = sufficient_statistic(&data);
        let mle = mle_from_stat(&stat)?;
        let umvue = umvue_from_stat(&stat)?;
        let (lo, hi) = delta_ci(mle, n, config.conf_level)?;
        sum_lower += lo;
        sum_upper += hi;
        differences.push(mle - umvue);
        mles.push(mle);
        umvues.push(umvue);
    }
    let (avg_m, bias_m, mse_m) = summarize_estimates(alpha, &mles);
    let (avg_u, bias_u, mse_u) = summarize_estimates(alpha, &umvues);
    let ci_length = (sum_upper - sum_lower) / reps as f64;
    Ok(CellOutput {
        mle: SimCellResult {
            alpha,
            n,
            method: EstimatorMethod::Mle,
            avg_estimate: avg_m,
            bias: bias_m,
            mse: mse_m,
            ci_length: Some(ci_length),
        },
        umvue: SimCellResult {
            alpha,
            n,
            method: EstimatorMethod::Umvue,
            avg_estimate: avg_u,
            bias: bias_u,
            mse: mse_u,
            ci_length: None,
        },
        n,
        differences,
    })
}

/// Run the whole study. Cells execute in parallel; the report is assembled
/// in grid order regardless of completion order.
pub fn run_full_study(config: &SimConfig) -> Result<StudyReport> {
    config.validate()?;
    let grid: Vec<(usize, f64, usize)> = config
        .alphas
        .iter()
        .flat_map(|&alpha| config.ns.iter().map(move |&n| (alpha, n)))
        .enumerate()
        .map(|(idx, (alpha, n))| (idx, alpha, n))
        .collect();

    let outputs: Vec<CellOutput> = grid
        .par_iter()
        .map(|&(idx, alpha, n)| run_cell(config, idx, alpha, n))
        .collect::<Result<Vec<_>>>()?;

    let mut cells = Vec::with_capacity(outputs.len() * 2);
    for out in &outputs {
        cells.push(out.mle.clone());
        cells.push(out.umvue.clone());
    }

    let iqr_by_n = config
        .ns
        .iter()
        .map(|&n| {
            let pooled: Vec<f64> = outputs
                .iter()
                .filter(|o| o.n == n)
                .flat_map(|o| o.differences.iter().copied())
                .collect();
            (n, interquartile_range(&pooled))
        })
        .collect();

    Ok(StudyReport { cells, iqr_by_n })
}

/// Per-cell summaries only.
pub fn run_monte_carlo(config: &SimConfig) -> Result<Vec<SimCellResult>> {
    Ok(run_full_study(config)?.cells)
}

/// Per sample size, the IQR of the pooled per-repetition (MLE − UMVUE)
/// differences across every α in the grid.
pub fn iqr_of_estimator_differences(config: &SimConfig) -> Result<Vec<(usize, f64)>> {
    Ok(run_full_study(config)?.iqr_by_n)
}

/// Quantile by linear interpolation between order statistics (the common
/// "type 7" convention).
pub fn quantile_type7(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n as f64 - 1.0) * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

fn interquartile_range(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite differences"));
    quantile_type7(&sorted, 0.75) - quantile_type7(&sorted, 0.25)
}

//! AU-based statistical process control charts.
//!
//! For an in-control parameter α and false-alarm rate π, the chart carries
//! the centerline CL = E[X | α] and either equal-tailed limits
//! LCL = Q(π/2), UCL = Q(1 − π/2) or the highest-density interval of mass
//! 1 − π (shorter, because the density is unimodal and skewed). Observations
//! strictly outside [LCL, UCL] raise alarms.

use crate::au::AlphaUnit;
use crate::{Error, Result};
use serde::Serialize;

/// How the control limits are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LimitMethod {
    EqualTailed,
    Hdi,
}

/// Chart specification: in-control parameter, false-alarm rate, method.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChartSpec {
    pub alpha: f64,
    pub false_alarm: f64,
    pub method: LimitMethod,
}

impl ChartSpec {
    pub fn new(alpha: f64, false_alarm: f64, method: LimitMethod) -> Result<Self> {
        AlphaUnit::new(alpha)?;
        if !(false_alarm > 0.0 && false_alarm < 1.0) {
            return Err(Error::Domain(format!(
                "false-alarm rate must lie in (0,1), got {false_alarm}"
            )));
        }
        Ok(Self { alpha, false_alarm, method })
    }
}

/// Control limits and centerline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChartLimits {
    pub lcl: f64,
    pub cl: f64,
    pub ucl: f64,
    pub method: LimitMethod,
}

/// Result of screening a series against limits.
///
/// `alarm_indices` are 1-based observation positions, matching how chart
/// points are usually numbered.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartEvaluation {
    pub alarm_indices: Vec<usize>,
    pub alarm_count: usize,
    pub alarm_rate: f64,
    pub n: usize,
}

/// Compute the chart limits for a specification.
///
/// Both methods place the centerline at the in-control mean; they differ in
/// how the probability mass 1 − π is allocated to the interval.
pub fn control_limits(spec: &ChartSpec) -> Result<ChartLimits> {
    let au = AlphaUnit::new(spec.alpha)?;
    let cl = au.mean();
    let (lcl, ucl) = match spec.method {
        LimitMethod::EqualTailed => (
            au.quantile(spec.false_alarm / 2.0)?,
            au.quantile(1.0 - spec.false_alarm / 2.0)?,
        ),
        LimitMethod::Hdi => {
            let interval = au.hdi(1.0 - spec.false_alarm)?;
            (interval.lower, interval.upper)
        }
    };
    Ok(ChartLimits { lcl, cl, ucl, method: spec.method })
}

/// Flag every observation strictly below LCL or strictly above UCL.
///
/// Values must lie in (0, 1]; anything else is reported with its position.
pub fn evaluate_series(series: &[f64], limits: &ChartLimits) -> Result<ChartEvaluation> {
    let mut alarm_indices = Vec::new();
    for (i, &value) in series.iter().enumerate() {
        if !(value > 0.0 && value <= 1.0) || value.is_nan() {
            return Err(Error::OutOfUnitRange { index: i + 1, value });
        }
        if value < limits.lcl || value > limits.ucl {
            alarm_indices.push(i + 1);
        }
    }
    let n = series.len();
    let alarm_count = alarm_indices.len();
    let alarm_rate = if n == 0 { 0.0 } else { alarm_count as f64 / n as f64 };
    Ok(ChartEvaluation { alarm_indices, alarm_count, alarm_rate, n })
}

//! Validated unit-interval samples and the min-max / squeeze transforms.

use crate::{Error, Result};

/// A non-empty sample with every observation in (0, 1].
///
/// `squeezed` records whether the boundary squeeze was applied upstream;
/// likelihood code uses it to produce a pointed error message when exact
/// 0/1 observations slip through.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitSample {
    values: Vec<f64>,
    squeezed: bool,
    source: String,
}

impl UnitSample {
    /// Validates that `values` is non-empty and inside (0, 1].
    pub fn new(values: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        for (index, &value) in values.iter().enumerate() {
            if !(value > 0.0 && value <= 1.0) || value.is_nan() {
                return Err(Error::OutOfUnitRange { index, value });
            }
        }
        Ok(Self { values, squeezed: false, source: source.into() })
    }

    /// An inline (in-memory) sample.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Self::new(values, "inline")
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn squeezed(&self) -> bool {
        self.squeezed
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    fn mark_squeezed(mut self) -> Self {
        self.squeezed = true;
        self
    }
}

/// Min-max standardization (x − min)/(max − min) onto [0, 1].
///
/// The raw transform necessarily maps the minimum to 0 and the maximum to 1;
/// compose with [`squeeze`] before building a [`UnitSample`] for likelihood
/// work.
pub fn minmax_scale(values: &[f64]) -> Result<Vec<f64>> {
    if values.len() < 2 {
        return Err(Error::Domain("min-max transform needs at least 2 values".into()));
    }
    if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::OutOfUnitRange { index, value });
    }
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max - min == 0.0 {
        return Err(Error::DegenerateRange);
    }
    Ok(values.iter().map(|v| (v - min) / (max - min)).collect())
}

/// The boundary squeeze y ↦ (y·(n − 1) + 0.5)/n, pulling exact 0/1 values
/// into the open interval while barely moving interior points.
pub fn squeeze(values: &[f64]) -> Vec<f64> {
    let n = values.len() as f64;
    values.iter().map(|y| (y * (n - 1.0) + 0.5) / n).collect()
}

/// Min-max standardization into a validated [`UnitSample`].
///
/// With `apply_squeeze` the output is strictly inside (0, 1) and usable for
/// likelihoods. Without it the minimum maps to exactly 0, which no
/// [`UnitSample`] may contain, so the call fails with a message pointing at
/// the squeeze.
pub fn minmax_transform(values: &[f64], apply_squeeze: bool) -> Result<UnitSample> {
    let scaled = minmax_scale(values)?;
    if apply_squeeze {
        Ok(UnitSample::new(squeeze(&scaled), "minmax")?.mark_squeezed())
    } else {
        UnitSample::new(scaled, "minmax")
    }
}

/// Applies the squeeze to data already on the unit scale, accepting exact
/// 0/1 values in the input.
pub fn squeeze_unit_data(values: &[f64], source: impl Into<String>) -> Result<UnitSample> {
    for (index, &value) in values.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) || value.is_nan() {
            return Err(Error::OutOfUnitRange { index, value });
        }
    }
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(UnitSample::new(squeeze(values), source)?.mark_squeezed())
}

//! Orientation-aware min–max rescaling onto the 1–100 scale.
//!
//! Positive: `1 + (x − min) / (max − min) · 99`
//! Negative: `1 + (max − x) / (max − min) · 99`
//!
//! Bounds come from the observed cross-section, the pooled panel, or declared
//! goalposts. Degenerate bounds (`min == max`) score `degenerate_score`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::Dataset;
use crate::taxonomy::{HierarchySpec, IndicatorDef, Orientation};

pub const SCORE_MIN: f64 = 1.0;
pub const SCORE_MAX: f64 = 100.0;
const SPAN: f64 = SCORE_MAX - SCORE_MIN;

#[derive(Debug, Error, PartialEq)]
pub enum NormalizeError {
    #[error("indicator {0} has no declared goalposts")]
    MissingGoalposts(String),
    #[error("non-finite value {0}")]
    NonFinite(f64),
    #[error("no values to bound for indicator {0}")]
    Empty(String),
    #[error("indicator {0} is not in the hierarchy")]
    UnknownIndicator(String),
    #[error("invalid bounds policy: {0}")]
    InvalidPolicy(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundsMode {
    /// Observed min/max per indicator and year.
    InSamplePerYear,
    /// Observed min/max per indicator across every year.
    PooledPanel,
    /// Declared `fixed_bounds`; values outside are clamped.
    FixedGoalposts,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsPolicy {
    pub mode: BoundsMode,
    pub degenerate_score: f64,
    /// Optional winsorization: observed bounds are taken at these percentiles
    /// (0–100) instead of the extremes. Off by default; ignored for goalposts.
    pub trim_percentiles: Option<(f64, f64)>,
}

impl Default for BoundsPolicy {
    fn default() -> Self {
        BoundsPolicy {
            mode: BoundsMode::InSamplePerYear,
            degenerate_score: 50.5,
            trim_percentiles: None,
        }
    }
}

impl BoundsPolicy {
    pub fn new(mode: BoundsMode) -> Self {
        BoundsPolicy {
            mode,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), NormalizeError> {
        if !(SCORE_MIN..=SCORE_MAX).contains(&self.degenerate_score) {
            return Err(NormalizeError::InvalidPolicy(format!(
                "degenerate score {} outside [1, 100]",
                self.degenerate_score
            )));
        }
        if let Some((lo, hi)) = self.trim_percentiles {
            if !(0.0 <= lo && lo < hi && hi <= 100.0) {
                return Err(NormalizeError::InvalidPolicy(format!(
                    "trim percentiles ({lo}, {hi}) must satisfy 0 <= lo < hi <= 100"
                )));
            }
        }
        Ok(())
    }
}

/// Linear-interpolated percentile of sorted data, `p` in [0, 100].
fn percentile(sorted: &[f64], p: f64) -> f64 {
    let rank = p / 100.0 * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (rank - lo as f64)
}

/// Normalization bounds for one scope. The caller chooses which values to pass
/// (one year for in-sample, all years for pooled).
pub fn compute_bounds(
    values: &[f64],
    indicator: &IndicatorDef,
    policy: &BoundsPolicy,
) -> Result<(f64, f64), NormalizeError> {
    if policy.mode == BoundsMode::FixedGoalposts {
        return indicator
            .fixed_bounds
            .ok_or_else(|| NormalizeError::MissingGoalposts(indicator.id.clone()));
    }
    if values.is_empty() {
        return Err(NormalizeError::Empty(indicator.id.clone()));
    }
    if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(NormalizeError::NonFinite(bad));
    }
    match policy.trim_percentiles {
        Some((lo, hi)) => {
            let mut sorted = values.to_vec();
            sorted.sort_by(f64::total_cmp);
            Ok((percentile(&sorted, lo), percentile(&sorted, hi)))
        }
        None => {
            let min = values.iter().copied().fold(f64::INFINITY, f64::min);
            let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            Ok((min, max))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedValue {
    pub score: f64,
    pub degenerate: bool,
}

/// Rescales one raw value. Values outside `bounds` are clamped first, which
/// only matters for goalposts and trimmed bounds.
pub fn normalize_value(
    x: f64,
    bounds: (f64, f64),
    orientation: Orientation,
    policy: &BoundsPolicy,
) -> Result<NormalizedValue, NormalizeError> {
    if !x.is_finite() {
        return Err(NormalizeError::NonFinite(x));
    }
    let (min, max) = bounds;
    if min >= max {
        return Ok(NormalizedValue {
            score: policy.degenerate_score,
            degenerate: true,
        });
    }
    let x = x.clamp(min, max);
    let score = match orientation {
        Orientation::Positive => SCORE_MIN + (x - min) / (max - min) * SPAN,
        Orientation::Negative => SCORE_MIN + (max - x) / (max - min) * SPAN,
    };
    Ok(NormalizedValue {
        score: score.clamp(SCORE_MIN, SCORE_MAX),
        degenerate: false,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorScore {
    pub country: String,
    pub year: i32,
    pub indicator_id: String,
    pub score: f64,
    pub bounds_used: (f64, f64),
    pub degenerate: bool,
}

/// Scores every present observation. Output is ordered by
/// `(country, year, indicator)`.
pub fn normalize_dataset(
    d: &Dataset,
    spec: &HierarchySpec,
    policy: &BoundsPolicy,
) -> Result<Vec<IndicatorScore>, NormalizeError> {
    policy.validate()?;
    let defs = spec.indicator_map();

    // scope key: (indicator, Some(year)) for in-sample, (indicator, None) otherwise
    let scope = |ind: &str, year: i32| match policy.mode {
        BoundsMode::InSamplePerYear => (ind.to_owned(), Some(year)),
        _ => (ind.to_owned(), None),
    };
    let mut scoped: BTreeMap<(String, Option<i32>), Vec<f64>> = BTreeMap::new();
    for ((_, year, ind), value) in d.entries() {
        if !defs.contains_key(ind.as_str()) {
            return Err(NormalizeError::UnknownIndicator(ind.clone()));
        }
        if let Some(v) = value {
            scoped.entry(scope(ind, *year)).or_default().push(v);
        }
    }
    let mut bounds = BTreeMap::new();
    for (key, values) in &scoped {
        let def = defs[key.0.as_str()];
        bounds.insert(key.clone(), compute_bounds(values, def, policy)?);
    }

    let mut out = Vec::new();
    for ((country, year, ind), value) in d.entries() {
        let Some(x) = value else { continue };
        let def = defs[ind.as_str()];
        let b = bounds[&scope(ind, *year)];
        let n = normalize_value(x, b, def.orientation, policy)?;
        out.push(IndicatorScore {
            country: country.clone(),
            year: *year,
            indicator_id: ind.clone(),
            score: n.score,
            bounds_used: b,
            degenerate: n.degenerate,
        });
    }
    Ok(out)
}

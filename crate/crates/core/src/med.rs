//! MED: the multi-dimensional exercise distance between a template frame and a
//! test frame.
//!
//! Every feature valid in both frames gets an equal share of 100 points. A
//! feature keeps its full share while its relative deviation from the template
//! value stays within the tolerance `t`, loses points linearly up to a
//! deviation of 1, and scores nothing beyond that. The frame score is turned
//! into a distance with `100 / score - 1`, so a perfect match is distance 0.
//!
//! The template is always the first argument: the relative deviation is
//! normalized by the template value, so `med(x, y) != med(y, x)` in general.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureVector;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MedParams {
    /// Relative deviation tolerated without losing points.
    pub t: f64,
    /// Lower clamp on the frame score before inverting it into a distance.
    pub score_floor: f64,
    /// Template values with magnitude at or below this count as zero.
    pub zero_ref_eps: f64,
}

impl Default for MedParams {
    fn default() -> Self {
        Self {
            t: 0.1,
            score_floor: 1.0,
            zero_ref_eps: 1e-9,
        }
    }
}

impl MedParams {
    pub fn with_t(t: f64) -> Self {
        Self {
            t,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t.is_finite() && (0.0..1.0).contains(&self.t)) {
            return Err(Error::Config(format!("t = {} must satisfy 0 ≤ t < 1", self.t)));
        }
        if !(self.score_floor > 0.0 && self.score_floor <= 100.0) {
            return Err(Error::Config(format!(
                "score_floor = {} must satisfy 0 < floor ≤ 100",
                self.score_floor
            )));
        }
        if !(self.zero_ref_eps.is_finite() && self.zero_ref_eps >= 0.0) {
            return Err(Error::Config(format!("zero_ref_eps = {} must be ≥ 0", self.zero_ref_eps)));
        }
        Ok(())
    }

    /// Largest distance `med` can return.
    pub fn max_distance(&self) -> f64 {
        100.0 / self.score_floor - 1.0
    }
}

/// Relative deviation of a test value `y` from a template value `x`.
///
/// A (near-)zero template value matches only a (near-)zero test value; any
/// other test value yields 2, which lands in the zero-score branch.
pub fn feature_q(x: f64, y: f64, eps: f64) -> f64 {
    if x.abs() > eps {
        (x - y).abs() / x.abs()
    } else if y.abs() <= eps {
        0.0
    } else {
        2.0
    }
}

/// Points kept out of `allocated` at relative deviation `q`.
pub fn feature_score(allocated: f64, q: f64, t: f64) -> f64 {
    if q <= t {
        allocated
    } else if q <= 1.0 {
        allocated * (1.0 - q + t)
    } else {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureContribution {
    /// Position in the registry.
    pub index: usize,
    pub allocated: f64,
    pub achieved: f64,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameScore {
    pub score: f64,
    pub per_feature: Vec<FeatureContribution>,
    pub n_valid: usize,
}

fn check_lengths(x: &FeatureVector, y: &FeatureVector) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::RegistryMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(())
}

/// Frame score without the per-feature breakdown.
///
/// Accumulates the kept fraction of each share and scales once at the end, so
/// a perfect match is exactly 100.
pub fn frame_score_value(x: &FeatureVector, y: &FeatureVector, params: &MedParams) -> Result<f64> {
    check_lengths(x, y)?;
    let mut kept = 0.0;
    let mut n = 0usize;
    for i in 0..x.len() {
        if x.valid[i] && y.valid[i] {
            n += 1;
            kept += feature_score(1.0, feature_q(x.values[i], y.values[i], params.zero_ref_eps), params.t);
        }
    }
    if n == 0 {
        return Err(Error::NoValidFeatures);
    }
    Ok(100.0 * kept / n as f64)
}

/// Frame score with the per-feature breakdown. `x` is the template frame.
pub fn frame_score(x: &FeatureVector, y: &FeatureVector, params: &MedParams) -> Result<FrameScore> {
    let score = frame_score_value(x, y, params)?;
    let n_valid = (0..x.len()).filter(|&i| x.valid[i] && y.valid[i]).count();
    let allocated = 100.0 / n_valid as f64;
    let per_feature = (0..x.len())
        .filter(|&i| x.valid[i] && y.valid[i])
        .map(|i| {
            let q = feature_q(x.values[i], y.values[i], params.zero_ref_eps);
            FeatureContribution {
                index: i,
                allocated,
                achieved: feature_score(allocated, q, params.t),
                q,
            }
        })
        .collect();
    Ok(FrameScore {
        score,
        per_feature,
        n_valid,
    })
}

/// Distance for a frame score: `100 / max(score, floor) - 1`.
pub fn med_from_score(score: f64, score_floor: f64) -> f64 {
    100.0 / score.max(score_floor) - 1.0
}

/// MED distance between a template frame `x` and a test frame `y`.
pub fn med(x: &FeatureVector, y: &FeatureVector, params: &MedParams) -> Result<f64> {
    frame_score_value(x, y, params).map(|s| med_from_score(s, params.score_floor))
}

use serde::{Deserialize, Serialize};

use super::least_squares;
use crate::error::{Error, Result};
use crate::google::ImportanceVector;

/// Inverse participation ratio of one distribution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IprSample {
    pub n: usize,
    pub xi: f64,
    pub r: u32,
}

/// `xi = sum_i p_i^(2r)`: 1 for a point mass, `N^(1-2r)` for the uniform law.
pub fn ipr(p: &[f64], r: u32) -> Result<IprSample> {
    if r == 0 {
        return Err(Error::param("IPR order r must be at least 1"));
    }
    ImportanceVector::new(p.to_vec())?;
    let exp = 2 * r as i32;
    let xi = p.iter().map(|x| x.powi(exp)).sum();
    Ok(IprSample { n: p.len(), xi, r })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Localized,
    Intermediate,
    Delocalized,
}

/// Least-squares fit of `log xi = slope log N + intercept`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IprScaling {
    pub slope: f64,
    pub intercept: f64,
    pub phase: Phase,
}

/// `|slope|` at or below this is classified as localized.
pub const LOCALIZED_MAX_ABS_SLOPE: f64 = 0.25;
/// A slope at or below this is classified as delocalized.
pub const DELOCALIZED_MAX_SLOPE: f64 = -0.6;

impl Phase {
    pub fn classify(slope: f64) -> Phase {
        if slope.abs() <= LOCALIZED_MAX_ABS_SLOPE {
            Phase::Localized
        } else if slope <= DELOCALIZED_MAX_SLOPE {
            Phase::Delocalized
        } else {
            Phase::Intermediate
        }
    }
}

pub fn ipr_scaling(samples: &[IprSample]) -> Result<IprScaling> {
    let mut sizes: Vec<usize> = samples.iter().map(|s| s.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 2 {
        return Err(Error::param("IPR scaling needs at least two distinct graph sizes"));
    }
    if samples.iter().any(|s| s.xi.is_nan() || s.xi <= 0.0) {
        return Err(Error::param("IPR values must be positive"));
    }
    let xs: Vec<f64> = samples.iter().map(|s| (s.n as f64).ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.xi.ln()).collect();
    let (slope, intercept, _) = least_squares(&xs, &ys);
    Ok(IprScaling {
        slope,
        intercept,
        phase: Phase::classify(slope),
    })
}

use serde::{Deserialize, Serialize};

use super::{least_squares, RankList};
use crate::error::{Error, Result};

/// `I(i) ~ c i^(-beta)` fitted on log-log axes over ranks `i_min..=i_max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub beta: f64,
    pub c: f64,
    pub i_min: usize,
    pub i_max: usize,
    /// RMS of the natural-log residuals.
    pub residual: f64,
}

/// Two importances closer than this are treated as the same value.
const TIE_TOL: f64 = 1e-12;

/// `[1, i_max]` where `i_max` is the last rank above a minimum shared by two
/// or more nodes, which drops the degenerate tail. A unique minimum is kept,
/// and the full list is used when fewer than two ranks would remain.
pub fn default_fit_range(values: &[f64]) -> (usize, usize) {
    let m = values.len();
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let tied = values.iter().filter(|&&v| v <= min + TIE_TOL).count();
    if tied < 2 {
        return (1, m);
    }
    let last = values
        .iter()
        .rposition(|&v| v > min + TIE_TOL)
        .map(|p| p + 1)
        .unwrap_or(0);
    if last >= 2 {
        (1, last)
    } else {
        (1, m)
    }
}

/// Fits sorted importances; ranks are 1-based.
pub fn power_law_fit(ranks: &RankList, i_min: usize, i_max: usize) -> Result<PowerLawFit> {
    fit_values(&ranks.importances(), i_min, i_max)
}

pub(crate) fn fit_values(values: &[f64], i_min: usize, i_max: usize) -> Result<PowerLawFit> {
    if i_min < 1 || i_max > values.len() || i_max < i_min + 1 {
        return Err(Error::param(format!(
            "fit range [{i_min}, {i_max}] invalid for {} ranks",
            values.len()
        )));
    }
    let slice = &values[i_min - 1..i_max];
    if let Some(v) = slice.iter().find(|v| v.is_nan() || **v <= 0.0) {
        return Err(Error::FitDomain(format!("nonpositive importance {v} inside fit range")));
    }
    let xs: Vec<f64> = (i_min..=i_max).map(|i| (i as f64).ln()).collect();
    let ys: Vec<f64> = slice.iter().map(|v| v.ln()).collect();
    let (slope, intercept, residual) = least_squares(&xs, &ys);
    Ok(PowerLawFit {
        beta: -slope,
        c: intercept.exp(),
        i_min,
        i_max,
        residual,
    })
}

/// Element-wise mean of several descending importance curves of equal length.
pub fn mean_sorted_curve(curves: &[Vec<f64>]) -> Result<Vec<f64>> {
    let first = curves
        .first()
        .ok_or_else(|| Error::param("no curves to average"))?;
    let m = first.len();
    if curves.iter().any(|c| c.len() != m) {
        return Err(Error::param("curves have different lengths"));
    }
    let k = curves.len() as f64;
    Ok((0..m)
        .map(|i| curves.iter().map(|c| c[i]).sum::<f64>() / k)
        .collect())
}

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Ranker;
use crate::error::{Error, Result};
use crate::google::{check_alpha, ImportanceVector};
use crate::graph::DirectedGraph;

fn check_pair(p: &[f64], q: &[f64]) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::param(format!(
            "importance vectors have lengths {} and {}",
            p.len(),
            q.len()
        )));
    }
    ImportanceVector::new(p.to_vec())?;
    ImportanceVector::new(q.to_vec())?;
    Ok(())
}

/// `sum_j sqrt(p_j q_j)`, clipped to `[0, 1]`.
pub fn classical_fidelity(p: &[f64], q: &[f64]) -> Result<f64> {
    check_pair(p, q)?;
    let f: f64 = p.iter().zip(q).map(|(a, b)| (a * b).sqrt()).sum();
    Ok(f.min(1.0))
}

/// `max_i |p_i - q_i|`.
pub fn qpr_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    check_pair(p, q)?;
    Ok(p.iter()
        .zip(q)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphaGrid {
    /// 20 evenly spaced values from 0.01 to 0.98.
    Coarse,
    /// 0.01 to 0.98 in steps of 0.01.
    Fine,
}

pub fn alpha_grid(kind: AlphaGrid) -> Vec<f64> {
    match kind {
        AlphaGrid::Coarse => (0..20).map(|k| 0.01 + 0.97 * k as f64 / 19.0).collect(),
        AlphaGrid::Fine => (1..=98).map(|k| k as f64 / 100.0).collect(),
    }
}

/// Pairwise fidelity and distance between importance vectors over a damping grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityGrid {
    pub alphas: Vec<f64>,
    pub fidelity: Vec<Vec<f64>>,
    pub distance: Vec<Vec<f64>>,
}

impl StabilityGrid {
    pub fn min_fidelity(&self) -> f64 {
        self.fidelity.iter().flatten().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_distance(&self) -> f64 {
        self.distance.iter().flatten().copied().fold(0.0, f64::max)
    }
}

fn importances(g: &DirectedGraph, alphas: &[f64], ranker: &Ranker) -> Result<Vec<Vec<f64>>> {
    for &a in alphas {
        check_alpha(a)?;
    }
    alphas
        .par_iter()
        .map(|&a| ranker.with_alpha(a).importance(g).map(|v| v.into_inner()))
        .collect()
}

/// Evaluates `ranker` at every damping value in `alphas` (its own `alpha` is
/// ignored) and fills the symmetric fidelity and distance matrices.
pub fn stability_grid(g: &DirectedGraph, alphas: &[f64], ranker: &Ranker) -> Result<StabilityGrid> {
    let vecs = importances(g, alphas, ranker)?;
    let m = alphas.len();
    let mut fidelity = vec![vec![0.0; m]; m];
    let mut distance = vec![vec![0.0; m]; m];
    for i in 0..m {
        fidelity[i][i] = 1.0;
        for j in i + 1..m {
            let f = classical_fidelity(&vecs[i], &vecs[j])?;
            let d = qpr_distance(&vecs[i], &vecs[j])?;
            fidelity[i][j] = f;
            fidelity[j][i] = f;
            distance[i][j] = d;
            distance[j][i] = d;
        }
    }
    Ok(StabilityGrid {
        alphas: alphas.to_vec(),
        fidelity,
        distance,
    })
}

/// Fidelity and distance of every grid point against one reference damping.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilitySweep {
    pub reference: f64,
    pub alphas: Vec<f64>,
    pub fidelity: Vec<f64>,
    pub distance: Vec<f64>,
}

pub fn stability_sweep(
    g: &DirectedGraph,
    reference: f64,
    alphas: &[f64],
    ranker: &Ranker,
) -> Result<StabilitySweep> {
    check_alpha(reference)?;
    let base = ranker.with_alpha(reference).importance(g)?.into_inner();
    let vecs = importances(g, alphas, ranker)?;
    let mut fidelity = Vec::with_capacity(alphas.len());
    let mut distance = Vec::with_capacity(alphas.len());
    for v in &vecs {
        fidelity.push(classical_fidelity(&base, v)?);
        distance.push(qpr_distance(&base, v)?);
    }
    Ok(StabilitySweep {
        reference,
        alphas: alphas.to_vec(),
        fidelity,
        distance,
    })
}

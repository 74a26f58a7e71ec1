//! Measurements built on top of the two ranking algorithms.

mod attack;
mod ensemble;
mod ipr;
mod powerlaw;
mod rank;
mod stability;

pub use attack::{attack_experiment, AttackExperiment, HubSelection};
pub use ensemble::{
    ensemble_map, ensemble_run, summarize, EnsembleReport, Experiment, IprExperiment, MetricSummary, PowerLawExperiment,
    RunRecord,
};
pub use ipr::{ipr, ipr_scaling, IprSample, IprScaling, Phase};
pub use powerlaw::{default_fit_range, mean_sorted_curve, power_law_fit, PowerLawFit};
pub use rank::{degeneracy_resolution, kendall_coefficient, RankList};
pub use stability::{
    alpha_grid, classical_fidelity, qpr_distance, stability_grid, stability_sweep, AlphaGrid,
    StabilityGrid, StabilitySweep,
};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::google::{pagerank, GoogleMatrix, ImportanceVector, PowerIteration};
use crate::graph::DirectedGraph;
use crate::walk::{average_qpr, DEFAULT_HORIZON};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Classical,
    Quantum,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Classical => "classical",
            Algorithm::Quantum => "quantum",
        }
    }
}

/// How to turn a graph into an importance vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ranker {
    pub algorithm: Algorithm,
    pub alpha: f64,
    /// Averaging horizon of the quantum walk.
    pub horizon: usize,
    pub tol: f64,
    pub max_iter: usize,
}

impl Ranker {
    pub fn classical(alpha: f64) -> Self {
        let p = PowerIteration::default();
        Ranker {
            algorithm: Algorithm::Classical,
            alpha,
            horizon: DEFAULT_HORIZON,
            tol: p.tol,
            max_iter: p.max_iter,
        }
    }

    pub fn quantum(alpha: f64, horizon: usize) -> Self {
        Ranker {
            algorithm: Algorithm::Quantum,
            horizon,
            ..Ranker::classical(alpha)
        }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        Ranker { alpha, ..self }
    }

    fn power(&self) -> PowerIteration {
        PowerIteration {
            tol: self.tol,
            max_iter: self.max_iter,
        }
    }

    pub fn importance(&self, g: &DirectedGraph) -> Result<ImportanceVector> {
        match self.algorithm {
            Algorithm::Classical => pagerank(g, self.alpha, self.power()),
            Algorithm::Quantum => {
                let gm = GoogleMatrix::from_graph(g, self.alpha)?;
                Ok(average_qpr(&gm, self.horizon).importance)
            }
        }
    }

    pub fn rank(&self, g: &DirectedGraph) -> Result<RankList> {
        Ok(RankList::from_importance(self.importance(g)?.values()))
    }
}

/// Ordinary least squares `y = slope x + intercept`; also returns the RMS residual.
pub(crate) fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    (slope, intercept, (ss / n).sqrt())
}

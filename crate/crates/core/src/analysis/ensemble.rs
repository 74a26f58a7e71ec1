use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::powerlaw::{default_fit_range, fit_values};
use super::{ipr, Ranker};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, GeneratorSpec};

/// A per-graph measurement producing a fixed list of named scalars.
pub trait Experiment: Sync {
    fn name(&self) -> &str;
    fn metrics(&self) -> Vec<String>;
    /// One value per entry of `metrics`, in the same order.
    fn run(&self, g: &DirectedGraph) -> Result<Vec<f64>>;
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub name: String,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single run.
    pub stddev: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    /// `None` when the run failed.
    pub values: Option<Vec<f64>>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub experiment: String,
    pub spec: GeneratorSpec,
    pub count: usize,
    pub failures: usize,
    pub metrics: Vec<MetricSummary>,
    pub runs: Vec<RunRecord>,
}

impl EnsembleReport {
    pub fn metric(&self, name: &str) -> Option<&MetricSummary> {
        self.metrics.iter().find(|m| m.name == name)
    }

    pub fn successful(&self) -> impl Iterator<Item = &[f64]> {
        self.runs.iter().filter_map(|r| r.values.as_deref())
    }
}

pub(crate) fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Applies `f` to the graphs drawn with seeds `spec.seed + i`, `i < count`,
/// in parallel; results come back in seed order.
pub fn ensemble_map<T, F>(spec: &GeneratorSpec, count: usize, f: F) -> Vec<(u64, Result<T>)>
where
    T: Send,
    F: Fn(&DirectedGraph) -> Result<T> + Sync,
{
    (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let seed = spec.seed.wrapping_add(i);
            (seed, spec.with_seed(seed).generate().and_then(|g| f(&g)))
        })
        .collect()
}

/// Runs `experiment` on `count` graphs drawn with seeds `spec.seed + i`.
///
/// Failed runs are kept in the report but excluded from the statistics.
pub fn ensemble_run(spec: &GeneratorSpec, count: usize, experiment: &dyn Experiment) -> Result<EnsembleReport> {
    if count == 0 {
        return Err(Error::param("ensemble count must be at least 1"));
    }
    let runs: Vec<RunRecord> = ensemble_map(spec, count, |g| experiment.run(g))
        .into_iter()
        .map(|(seed, outcome)| match outcome {
            Ok(values) => RunRecord {
                seed,
                values: Some(values),
                error: None,
            },
            Err(e) => RunRecord {
                seed,
                values: None,
                error: Some(e.to_string()),
            },
        })
        .collect();

    let ok: Vec<&[f64]> = runs.iter().filter_map(|r| r.values.as_deref()).collect();
    if ok.is_empty() {
        let first = runs[0].error.clone().unwrap_or_default();
        return Err(Error::param(format!(
            "all {count} runs of {} failed; first error: {first}",
            experiment.name()
        )));
    }
    let metrics = summarize(&experiment.metrics(), &ok);
    Ok(EnsembleReport {
        experiment: experiment.name().to_string(),
        spec: spec.clone(),
        count,
        failures: count - ok.len(),
        metrics,
        runs,
    })
}

/// Column-wise mean and sample standard deviation of equally long rows.
pub fn summarize(names: &[String], rows: &[&[f64]]) -> Vec<MetricSummary> {
    names
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let column: Vec<f64> = rows.iter().map(|v| v[k]).collect();
            let (mean, stddev) = mean_std(&column);
            MetricSummary {
                name: name.clone(),
                mean,
                stddev,
            }
        })
        .collect()
}

/// Inverse participation ratio of the chosen ranking.
pub struct IprExperiment {
    pub ranker: Ranker,
    pub r: u32,
}

impl Experiment for IprExperiment {
    fn name(&self) -> &str {
        "ipr"
    }

    fn metrics(&self) -> Vec<String> {
        vec!["xi".into()]
    }

    fn run(&self, g: &DirectedGraph) -> Result<Vec<f64>> {
        let p = self.ranker.importance(g)?;
        Ok(vec![ipr(p.values(), self.r)?.xi])
    }
}

/// Power-law fit of the sorted importances; `range` overrides the default.
pub struct PowerLawExperiment {
    pub ranker: Ranker,
    pub range: Option<(usize, usize)>,
}

impl Experiment for PowerLawExperiment {
    fn name(&self) -> &str {
        "powerlaw"
    }

    fn metrics(&self) -> Vec<String> {
        vec!["beta".into(), "c".into(), "residual".into()]
    }

    fn run(&self, g: &DirectedGraph) -> Result<Vec<f64>> {
        let values = self.ranker.rank(g)?.importances();
        let (lo, hi) = self.range.unwrap_or_else(|| default_fit_range(&values));
        let fit = fit_values(&values, lo, hi)?;
        Ok(vec![fit.beta, fit.c, fit.residual])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    struct EdgeCount;

    impl Experiment for EdgeCount {
        fn name(&self) -> &str {
            "edges"
        }
        fn metrics(&self) -> Vec<String> {
            vec!["m".into()]
        }
        fn run(&self, g: &DirectedGraph) -> Result<Vec<f64>> {
            if g.edge_count().is_multiple_of(7) {
                return Err(Error::param("unlucky"));
            }
            Ok(vec![g.edge_count() as f64])
        }
    }

    #[test]
    fn single_run_has_zero_stddev() {
        let spec = GeneratorSpec::erdos_renyi(20, 0.2, 3);
        let rep = ensemble_run(&spec, 1, &IprExperiment { ranker: Ranker::classical(0.85), r: 1 }).unwrap();
        assert_eq!(rep.metrics[0].stddev, 0.0);
        let g = spec.generate().unwrap();
        let p = Ranker::classical(0.85).importance(&g).unwrap();
        assert_eq!(rep.metrics[0].mean, ipr(p.values(), 1).unwrap().xi);
    }

    #[test]
    fn deterministic_family_has_zero_stddev() {
        let spec = GeneratorSpec {
            family: Family::HierarchicalTernary { generation: 2 },
            seed: 0,
        };
        let rep = ensemble_run(&spec, 4, &PowerLawExperiment { ranker: Ranker::classical(0.85), range: None }).unwrap();
        assert!(rep.metrics.iter().all(|m| m.stddev == 0.0));
        assert_eq!(rep.failures, 0);
    }

    #[test]
    fn failures_are_counted_and_excluded() {
        let spec = GeneratorSpec::erdos_renyi(12, 0.3, 100);
        let rep = ensemble_run(&spec, 30, &EdgeCount).unwrap();
        let failed = rep.runs.iter().filter(|r| r.values.is_none()).count();
        assert_eq!(rep.failures, failed);
        let ok: Vec<f64> = rep.successful().map(|v| v[0]).collect();
        assert_eq!(ok.len(), 30 - failed);
        assert!(ok.iter().all(|m| !(*m as usize).is_multiple_of(7)));
        let (mean, _) = mean_std(&ok);
        assert_eq!(rep.metrics[0].mean, mean);
        assert_eq!(rep.runs[4].seed, 104);
    }

    #[test]
    fn sample_stddev() {
        let (m, s) = mean_std(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }
}

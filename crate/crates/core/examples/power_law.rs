//! Fits I(i) ~ c i^-beta to the sorted importances of a scale-free ensemble.
//!
//! cargo run --release --example power_law

use quantum_pagerank::analysis::{ensemble_run, PowerLawExperiment, Ranker};
use quantum_pagerank::graph::GeneratorSpec;

fn main() -> quantum_pagerank::Result<()> {
    let spec = GeneratorSpec::scale_free(256, 0);
    for ranker in [Ranker::classical(0.85), Ranker::quantum(0.85, 1000)] {
        let report = ensemble_run(&spec, 29, &PowerLawExperiment { ranker, range: None })?;
        let beta = report.metric("beta").expect("beta");
        let c = report.metric("c").expect("c");
        println!(
            "{:<9} beta = {:.3} +- {:.3}   c = {:.4} +- {:.4}   ({} graphs)",
            ranker.algorithm.name(),
            beta.mean,
            beta.stddev,
            c.mean,
            c.stddev,
            report.count - report.failures
        );
    }
    Ok(())
}

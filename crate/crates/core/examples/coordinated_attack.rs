//! Removes the top hubs one by one and measures with Kendall's coefficient
//! how much the order of the remaining nodes changes.
//!
//! cargo run --release --example coordinated_attack

use quantum_pagerank::analysis::{ensemble_run, AttackExperiment, HubSelection, Ranker};
use quantum_pagerank::graph::GeneratorSpec;

fn main() -> quantum_pagerank::Result<()> {
    for n in [16, 32] {
        println!("scale-free, n = {n}, 100 graphs");
        for ranker in [Ranker::classical(0.85), Ranker::quantum(0.85, 1000)] {
            let exp = AttackExperiment {
                ranker,
                removals: 5,
                selection: HubSelection::Initial,
            };
            let report = ensemble_run(&GeneratorSpec::scale_free(n, 0), 100, &exp)?;
            let ks: Vec<String> = report
                .metrics
                .iter()
                .map(|m| format!("{:.3}({:.3})", m.mean, m.stddev))
                .collect();
            println!("  {:<9} K = {}", ranker.algorithm.name(), ks.join(" "));
        }
    }
    Ok(())
}

//! Inverse participation ratio against graph size for scale-free and
//! Erdos-Renyi graphs. A flat log-log slope means the walker stays on a
//! few nodes; a slope near -1 means it spreads over the whole graph.
//!
//! cargo run --release --example localization_ipr

use quantum_pagerank::analysis::{ipr, ipr_scaling, IprSample, Ranker};
use quantum_pagerank::graph::GeneratorSpec;

fn main() -> quantum_pagerank::Result<()> {
    let sizes = [32, 64, 128, 256];
    type Family = fn(usize) -> GeneratorSpec;
    let families: [(&str, Family); 2] = [
        ("scale-free", |n| GeneratorSpec::scale_free(n, 0)),
        ("erdos-renyi p=0.1", |n| GeneratorSpec::erdos_renyi(n, 0.1, 0)),
    ];
    for (name, spec) in families {
        for ranker in [Ranker::classical(0.85), Ranker::quantum(0.85, 1000)] {
            let mut samples = Vec::new();
            for &n in &sizes {
                let g = spec(n).generate()?;
                samples.push(ipr(ranker.importance(&g)?.values(), 1)?);
            }
            let fit = ipr_scaling(&samples)?;
            let xi: Vec<String> = samples.iter().map(|s: &IprSample| format!("{:.4}", s.xi)).collect();
            println!(
                "{name:<18} {:<9} xi = [{}]  slope {:+.3}  {:?}",
                ranker.algorithm.name(),
                xi.join(", "),
                fit.slope,
                fit.phase
            );
        }
    }
    Ok(())
}

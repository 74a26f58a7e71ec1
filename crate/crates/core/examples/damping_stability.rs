//! How much the ranking moves when the damping parameter changes.
//!
//! cargo run --release --example damping_stability

use quantum_pagerank::analysis::{alpha_grid, stability_grid, stability_sweep, AlphaGrid, Ranker};
use quantum_pagerank::graph::GeneratorSpec;

fn main() -> quantum_pagerank::Result<()> {
    let g = GeneratorSpec::scale_free(128, 0).generate()?;
    let alphas = alpha_grid(AlphaGrid::Coarse);
    for ranker in [Ranker::classical(0.85), Ranker::quantum(0.85, 1000)] {
        let grid = stability_grid(&g, &alphas, &ranker)?;
        println!(
            "{:<9} min fidelity {:.4}  max distance {:.4}",
            ranker.algorithm.name(),
            grid.min_fidelity(),
            grid.max_distance()
        );
        let sweep = stability_sweep(&g, 0.85, &[0.1, 0.5, 0.8, 0.9, 0.95, 0.98], &ranker)?;
        for (a, f) in sweep.alphas.iter().zip(&sweep.fidelity) {
            println!("          f({a:.2}, 0.85) = {f:.4}");
        }
    }
    Ok(())
}

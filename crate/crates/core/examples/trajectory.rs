//! Instantaneous quantum PageRank of one node over time together with its
//! running average, the quantity the ranking is built from.
//!
//! cargo run --release --example trajectory

use quantum_pagerank::google::GoogleMatrix;
use quantum_pagerank::graph::GeneratorSpec;
use quantum_pagerank::walk::SzegedyWalk;

fn main() -> quantum_pagerank::Result<()> {
    let g = GeneratorSpec::scale_free(32, 0).generate()?;
    let gm = GoogleMatrix::from_graph(&g, 0.85)?;
    let walk = SzegedyWalk::new(&gm);
    let mut sum = 0.0;
    walk.evolve(200, |t, dist| {
        sum += dist[0];
        if t % 20 == 0 {
            println!("t = {t:>3}  I_q(0, t) = {:.5}  running mean = {:.5}", dist[0], sum / (t + 1) as f64);
        }
    });
    let avg = walk.average(1000);
    println!("T = 1000 average {:.5}, convergence {:.2e}", avg.importance[0], avg.convergence);
    Ok(())
}

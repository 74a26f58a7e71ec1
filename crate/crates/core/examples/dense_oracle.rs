//! Checks the 2N-dimensional reduced walk against the full N^2 simulation.
//!
//! cargo run --release --example dense_oracle

use quantum_pagerank::google::GoogleMatrix;
use quantum_pagerank::graph::GeneratorSpec;
use quantum_pagerank::walk::dense::DenseWalk;
use quantum_pagerank::walk::SzegedyWalk;

fn main() -> quantum_pagerank::Result<()> {
    let g = GeneratorSpec::scale_free(10, 4).generate()?;
    let gm = GoogleMatrix::from_graph(&g, 0.85)?;
    let dense = DenseWalk::new(&gm)?;
    let reduced = SzegedyWalk::new(&gm);

    let mut reduced_traj = Vec::new();
    reduced.evolve(30, |_, dist| reduced_traj.push(dist.to_vec()));

    let mut state = dense.init();
    let mut worst: f64 = 0.0;
    for (t, r) in reduced_traj.iter().enumerate() {
        let d = dense.measure(&state);
        let diff = d.values().iter().zip(r).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        worst = worst.max(diff);
        if t % 10 == 0 {
            println!("t = {t:>2}  max |dense - reduced| = {diff:.2e}  norm = {:.15}", state.norm());
        }
        state = dense.step(&dense.step(&state));
    }
    println!("worst difference over 30 steps: {worst:.2e}");
    Ok(())
}

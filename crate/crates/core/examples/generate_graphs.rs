//! Builds one graph of every family and prints its size and degree profile.
//!
//! cargo run --example generate_graphs

use quantum_pagerank::graph::{
    hierarchical_outerplanar, hierarchical_ternary, write_pajek, DirectedGraph, GeneratorSpec,
};

fn describe(name: &str, g: &DirectedGraph) {
    let in_deg = g.in_degrees();
    let max_in = in_deg.iter().max().copied().unwrap_or(0);
    let dangling = g.out_degrees().iter().filter(|&&d| d == 0).count();
    println!(
        "{name:<22} nodes {:>4}  arcs {:>5}  max in-degree {:>3}  dangling {:>3}",
        g.node_count(),
        g.edge_count(),
        max_in,
        dangling
    );
}

fn main() -> quantum_pagerank::Result<()> {
    describe("scale-free n=256", &GeneratorSpec::scale_free(256, 1).generate()?);
    describe("erdos-renyi n=256", &GeneratorSpec::erdos_renyi(256, 0.05, 1).generate()?);
    for gen in 2..=4 {
        describe(&format!("ternary gen {gen}"), &hierarchical_ternary(gen)?);
    }
    for gen in 4..=6 {
        describe(&format!("outerplanar gen {gen}"), &hierarchical_outerplanar(gen)?);
    }

    let small = hierarchical_ternary(2)?;
    println!("\nternary gen 2 in Pajek form:\n{}", write_pajek(&small));
    Ok(())
}

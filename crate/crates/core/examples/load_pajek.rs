//! Reads a Pajek network and prints its top nodes under both algorithms.
//!
//! cargo run --release --example load_pajek -- path/to/graph.net

use quantum_pagerank::analysis::Ranker;
use quantum_pagerank::graph::{parse_pajek, read_graph_file};

const SAMPLE: &str = "\
% a small web of five pages
*Vertices 5
1 \"home\"
2 \"about\"
3 \"news\"
4 \"archive\"
5 \"contact\"
*Arcs
1 2
1 3
2 1
3 1
3 4
4 3
5 1
*Edges
2 5
";

fn main() -> quantum_pagerank::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => read_graph_file(path.as_ref())?,
        None => parse_pajek(SAMPLE)?,
    };
    println!("{} nodes, {} arcs", g.node_count(), g.edge_count());
    for ranker in [Ranker::classical(0.85), Ranker::quantum(0.85, 1000)] {
        let top: Vec<String> = ranker
            .rank(&g)?
            .entries()
            .iter()
            .take(10)
            .map(|(id, v)| format!("{}:{:.4}", id.index() + 1, v))
            .collect();
        println!("{:<9} {}", ranker.algorithm.name(), top.join("  "));
    }
    Ok(())
}

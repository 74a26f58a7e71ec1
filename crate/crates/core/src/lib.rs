//! Classical and quantum (Szegedy) PageRank on directed networks.
//!
//! The classical side is the usual power iteration on the Google matrix. The
//! quantum side simulates the Szegedy walk built from the same matrix and
//! averages the second-register measurement over time. The [`analysis`]
//! module compares the two: localization, damping stability, power-law
//! structure of the ranking and sensitivity to hub removal.
//!
//! ```
//! use quantum_pagerank::graph::DirectedGraph;
//! use quantum_pagerank::analysis::Ranker;
//!
//! let g = DirectedGraph::new(2, [(0, 1)]).unwrap();
//! let classical = Ranker::classical(0.85).importance(&g).unwrap();
//! let quantum = Ranker::quantum(0.85, 200).importance(&g).unwrap();
//! assert!(classical[1] > classical[0]);
//! assert!((quantum.sum() - 1.0).abs() < 1e-9);
//! ```

pub mod analysis;
pub mod cli;
pub mod error;
pub mod google;
pub mod graph;
pub mod report;
pub mod walk;

pub use error::{Error, Result};

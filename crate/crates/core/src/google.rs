//! Patched connectivity matrix, Google matrix and classical PageRank.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// Below this dimension matrix-vector products stay on the calling thread.
const PAR_THRESHOLD: usize = 512;

/// Number of rows handed to one rayon task in a parallel product.
const ROW_CHUNK: usize = 64;

/// Dense column-stochastic matrix in column-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct StochasticMatrix {
    n: usize,
    data: Vec<f64>,
}

impl StochasticMatrix {
    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry in row `row`, column `col`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[col * self.n + row]
    }

    pub fn column(&self, col: usize) -> &[f64] {
        &self.data[col * self.n..(col + 1) * self.n]
    }
}

/// Column `j` is uniform over the out-neighbours of `j`, or uniform over all
/// nodes when `j` has none.
pub fn patched_connectivity(g: &DirectedGraph) -> Result<StochasticMatrix> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::param("graph has no nodes"));
    }
    let mut data = vec![0.0; n * n];
    for (j, targets) in g.out_neighbors().iter().enumerate() {
        let col = &mut data[j * n..(j + 1) * n];
        if targets.is_empty() {
            col.fill(1.0 / n as f64);
        } else {
            let w = 1.0 / targets.len() as f64;
            for &t in targets {
                col[t] = w;
            }
        }
    }
    Ok(StochasticMatrix { n, data })
}

/// `G = alpha E + (1 - alpha) / N`, stored column-major.
#[derive(Clone, Debug, PartialEq)]
pub struct GoogleMatrix {
    n: usize,
    alpha: f64,
    data: Vec<f64>,
}

pub fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!("damping {alpha} outside (0, 1)")))
    }
}

impl GoogleMatrix {
    pub fn from_connectivity(e: &StochasticMatrix, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let hop = (1.0 - alpha) / e.n as f64;
        let data = e.data.iter().map(|&x| alpha * x + hop).collect();
        Ok(GoogleMatrix {
            n: e.n,
            alpha,
            data,
        })
    }

    pub fn from_graph(g: &DirectedGraph, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Self::from_connectivity(&patched_connectivity(g)?, alpha)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[col * self.n + row]
    }

    pub fn column(&self, col: usize) -> &[f64] {
        &self.data[col * self.n..(col + 1) * self.n]
    }

    /// Column-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// `y = G x`.
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        col_major_mul(self.n, &self.data, x, y);
    }

    /// One row per line, space separated, 17 significant digits.
    pub fn to_dense_text(&self) -> String {
        let mut out = String::with_capacity(self.n * self.n * 24);
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{}", crate::report::fmt_f64(self.get(i, j)));
            }
            out.push('\n');
        }
        out
    }
}

/// `y = M x` for a column-major `n x n` matrix. Each row is summed in column
/// order whether or not the product runs in parallel, so results are
/// bit-identical across thread counts.
pub(crate) fn col_major_mul(n: usize, m: &[f64], x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(m.len(), n * n);
    let fill = |row0: usize, out: &mut [f64]| {
        out.fill(0.0);
        let rows = out.len();
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0.0 {
                continue;
            }
            let col = &m[j * n + row0..j * n + row0 + rows];
            for (o, &c) in out.iter_mut().zip(col) {
                *o += c * xj;
            }
        }
    };
    if n < PAR_THRESHOLD {
        fill(0, y);
    } else {
        y.par_chunks_mut(ROW_CHUNK)
            .enumerate()
            .for_each(|(k, chunk)| fill(k * ROW_CHUNK, chunk));
    }
}

/// Probability distribution over nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct ImportanceVector(Vec<f64>);

/// Tolerance on the total mass accepted by [`ImportanceVector::new`].
pub const NORMALIZATION_TOL: f64 = 1e-9;

impl ImportanceVector {
    /// Validates nonnegativity and unit mass.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::param("empty importance vector"));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::param(format!("importance value {v} is negative or not finite")));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::param(format!("importances sum to {sum}, not 1")));
        }
        Ok(ImportanceVector(values))
    }

    /// Clamps tiny negative rounding residue to zero without checking the mass.
    pub(crate) fn from_raw(mut values: Vec<f64>) -> Self {
        for v in &mut values {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        ImportanceVector(values)
    }

    pub fn uniform(n: usize) -> Self {
        ImportanceVector(vec![1.0 / n as f64; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl std::ops::Index<usize> for ImportanceVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerIteration {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PowerIteration {
    fn default() -> Self {
        PowerIteration {
            tol: 1e-12,
            max_iter: 100_000,
        }
    }
}

/// `||G x - x||_1`.
pub fn residual(g: &GoogleMatrix, x: &[f64]) -> f64 {
    let mut y = vec![0.0; g.dim()];
    g.mul_vec(x, &mut y);
    y.iter().zip(x).map(|(a, b)| (a - b).abs()).sum()
}

/// Stationary distribution of `G` by power iteration from the uniform vector.
///
/// Stops at the first iterate whose L1 residual is at most `cfg.tol`.
pub fn classical_pagerank(g: &GoogleMatrix, cfg: PowerIteration) -> Result<ImportanceVector> {
    let n = g.dim();
    let mut x = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    let mut res = f64::INFINITY;
    for _ in 0..cfg.max_iter {
        g.mul_vec(&x, &mut y);
        res = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        if res <= cfg.tol {
            return Ok(ImportanceVector::from_raw(x));
        }
        let s: f64 = y.iter().sum();
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / s;
        }
    }
    Err(Error::Convergence {
        iterations: cfg.max_iter,
        residual: res,
    })
}

/// Classical PageRank of a graph in one call.
pub fn pagerank(g: &DirectedGraph, alpha: f64, cfg: PowerIteration) -> Result<ImportanceVector> {
    classical_pagerank(&GoogleMatrix::from_graph(g, alpha)?, cfg)
}

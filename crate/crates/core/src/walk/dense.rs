//! Full `N^2`-dimensional simulator, used as an oracle for the reduced walk.
//!
//! `Pi`, `S` and `U = S (2 Pi - 1)` are materialised as dense matrices over
//! the basis `|j>_1 |k>_2`, flattened to index `j * N + k`.

use crate::error::{Error, Result};
use crate::google::{GoogleMatrix, ImportanceVector};

/// Largest graph the dense simulator accepts.
pub const MAX_DENSE_NODES: usize = 64;

/// Amplitudes over `|j>_1 |k>_2`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amplitudes: Vec<f64>,
}

impl DenseState {
    pub fn new(n: usize, amplitudes: Vec<f64>) -> Self {
        assert_eq!(amplitudes.len(), n * n);
        DenseState { n, amplitudes }
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    #[inline]
    pub fn amplitude(&self, first: usize, second: usize) -> f64 {
        self.amplitudes[first * self.n + second]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Dense evolution operator for one Google matrix.
pub struct DenseWalk {
    n: usize,
    /// `psi[j]` is `|psi_j>` as a full vector.
    psi: Vec<Vec<f64>>,
    /// Row-major `N^2 x N^2`.
    u: Vec<f64>,
}

impl DenseWalk {
    pub fn new(g: &GoogleMatrix) -> Result<Self> {
        let n = g.dim();
        if n > MAX_DENSE_NODES {
            return Err(Error::Size {
                n,
                limit: MAX_DENSE_NODES,
            });
        }
        let dim = n * n;
        let psi: Vec<Vec<f64>> = (0..n)
            .map(|j| {
                let mut v = vec![0.0; dim];
                for k in 0..n {
                    v[j * n + k] = g.get(k, j).sqrt();
                }
                v
            })
            .collect();

        // reflection 2 Pi - 1
        let mut refl = vec![0.0; dim * dim];
        for p in &psi {
            for (r, &pr) in p.iter().enumerate() {
                if pr == 0.0 {
                    continue;
                }
                for (c, &pc) in p.iter().enumerate() {
                    refl[r * dim + c] += 2.0 * pr * pc;
                }
            }
        }
        for d in 0..dim {
            refl[d * dim + d] -= 1.0;
        }

        // U = S refl: row (j,k) of U is row (k,j) of refl
        let mut u = vec![0.0; dim * dim];
        for j in 0..n {
            for k in 0..n {
                let dst = (j * n + k) * dim;
                let src = (k * n + j) * dim;
                u[dst..dst + dim].copy_from_slice(&refl[src..src + dim]);
            }
        }
        Ok(DenseWalk { n, psi, u })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `N^{-1/2} sum_j |psi_j>`.
    pub fn init(&self) -> DenseState {
        let n = self.n;
        let scale = 1.0 / (n as f64).sqrt();
        let mut amp = vec![0.0; n * n];
        for p in &self.psi {
            for (a, v) in amp.iter_mut().zip(p) {
                *a += scale * v;
            }
        }
        DenseState::new(n, amp)
    }

    /// One application of `U`.
    pub fn step(&self, state: &DenseState) -> DenseState {
        let dim = self.n * self.n;
        let amp = (0..dim)
            .map(|r| {
                self.u[r * dim..(r + 1) * dim]
                    .iter()
                    .zip(&state.amplitudes)
                    .map(|(u, x)| u * x)
                    .sum()
            })
            .collect();
        DenseState::new(self.n, amp)
    }

    /// Probability of the second register: `sum_j amplitude(j, i)^2`.
    pub fn measure(&self, state: &DenseState) -> ImportanceVector {
        let n = self.n;
        let values = (0..n)
            .map(|i| (0..n).map(|j| state.amplitude(j, i).powi(2)).sum())
            .collect();
        ImportanceVector::from_raw(values)
    }
}

/// Register swap `S |j>|k> = |k>|j>`.
pub fn swap(state: &DenseState) -> DenseState {
    let n = state.n;
    let mut amp = vec![0.0; n * n];
    for j in 0..n {
        for k in 0..n {
            amp[k * n + j] = state.amplitude(j, k);
        }
    }
    DenseState::new(n, amp)
}

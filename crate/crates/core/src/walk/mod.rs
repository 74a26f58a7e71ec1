//! Szegedy quantization of the Google matrix.
//!
//! The walk lives on the edge space spanned by `|j>_1 |k>_2`. With
//! `|psi_j> = sum_k sqrt(G_kj) |j>_1 |k>_2`, the evolution operator is
//! `U = S (2 Pi - 1)` where `S` swaps the registers and `Pi` projects onto
//! `span{|psi_j>}`. Starting from `|psi_0> = N^{-1/2} sum_j |psi_j>`, the
//! state never leaves `span{|psi_j>, S|psi_k>}`, so it is stored as two
//! coefficient vectors:
//!
//! ```text
//! |phi> = sum_j a_j |psi_j> + sum_k b_k S|psi_k>
//! ```
//!
//! Because the `|psi_j>` are orthonormal and `<psi_j|S|psi_k> = D_jk` with
//! `D_jk = sqrt(G_kj G_jk)`, one application of `U` is `(a, b) -> (-b, a + 2 D b)`.
//! Every amplitude is real, so no complex arithmetic is needed.

pub mod dense;

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::google::{GoogleMatrix, ImportanceVector};

const PAR_THRESHOLD: usize = 512;
const ROW_CHUNK: usize = 64;

/// Default averaging horizon, in units of `U^2`.
pub const DEFAULT_HORIZON: usize = 1000;

/// `R[k][j] = sqrt(G[k][j])`, column-major.
#[derive(Clone, Debug)]
pub struct SqrtGoogle {
    n: usize,
    data: Vec<f64>,
}

impl SqrtGoogle {
    pub fn new(g: &GoogleMatrix) -> Self {
        SqrtGoogle {
            n: g.dim(),
            data: g.as_slice().iter().map(|x| x.sqrt()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `R[row][col]`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[col * self.n + row]
    }
}

/// Overlap matrix `D[j][k] = sqrt(G[k][j] G[j][k])`, symmetric.
#[derive(Clone, Debug)]
pub struct DMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DMatrix {
    pub fn new(g: &GoogleMatrix) -> Self {
        let n = g.dim();
        let mut data = vec![0.0; n * n];
        for j in 0..n {
            for k in 0..n {
                data[j * n + k] = (g.get(k, j) * g.get(j, k)).sqrt();
            }
        }
        DMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.data[j * self.n + k]
    }

    /// `y = D x`, rows summed in index order.
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        let n = self.n;
        let row = |i: usize| -> f64 {
            self.data[i * n..(i + 1) * n]
                .iter()
                .zip(x)
                .map(|(d, v)| d * v)
                .sum()
        };
        if n < PAR_THRESHOLD {
            for (i, yi) in y.iter_mut().enumerate() {
                *yi = row(i);
            }
        } else {
            y.par_chunks_mut(ROW_CHUNK).enumerate().for_each(|(c, chunk)| {
                for (r, yi) in chunk.iter_mut().enumerate() {
                    *yi = row(c * ROW_CHUNK + r);
                }
            });
        }
    }
}

/// Reduced walker state `(a, b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkState {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl WalkState {
    /// `|psi_0>`: `a = N^{-1/2} (1, ..., 1)`, `b = 0`.
    pub fn initial(n: usize) -> Self {
        WalkState {
            a: vec![1.0 / (n as f64).sqrt(); n],
            b: vec![0.0; n],
        }
    }

    /// `<phi|phi> = a.a + b.b + 2 a.D b`.
    pub fn norm_sqr(&self, d: &DMatrix) -> f64 {
        let mut db = vec![0.0; self.b.len()];
        d.mul_vec(&self.b, &mut db);
        dot(&self.a, &self.a) + dot(&self.b, &self.b) + 2.0 * dot(&self.a, &db)
    }
}

/// Initial state for the walk driven by `g`.
pub fn init_state(g: &GoogleMatrix) -> WalkState {
    WalkState::initial(g.dim())
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// One application of `U`: returns `(-b, a + 2 D b)`.
pub fn step_u(state: &WalkState, d: &DMatrix) -> WalkState {
    let mut db = vec![0.0; state.b.len()];
    d.mul_vec(&state.b, &mut db);
    WalkState {
        a: state.b.iter().map(|x| -x).collect(),
        b: state
            .a
            .iter()
            .zip(&db)
            .map(|(a, x)| a + 2.0 * x)
            .collect(),
    }
}

/// Second-register distribution `I_q(i) = sum_j (a_j R[i][j] + b_i R[j][i])^2`.
pub fn instantaneous_qpr(state: &WalkState, r: &SqrtGoogle) -> ImportanceVector {
    let n = r.dim();
    let values = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let amp = state.a[j] * r.get(i, j) + state.b[i] * r.get(j, i);
                    amp * amp
                })
                .sum()
        })
        .collect();
    ImportanceVector::from_raw(values)
}

/// Time average of the instantaneous distribution together with a
/// convergence estimate.
#[derive(Clone, Debug)]
pub struct AverageQpr {
    pub importance: ImportanceVector,
    pub horizon: usize,
    /// `max_i |avg_T(i) - avg_{T/2}(i)|`.
    pub convergence: f64,
}

/// Precomputed operators for evolving one Google matrix.
///
/// The measurement is evaluated in the expanded form
/// `I_q(i) = (G (a*a))_i + 2 b_i (D a)_i + b_i^2 c_i` with `c_i = sum_j G_ji`,
/// which equals the squared-amplitude sum term by term and costs two
/// matrix-vector products instead of a full sweep.
pub struct SzegedyWalk<'g> {
    g: &'g GoogleMatrix,
    d: DMatrix,
    col_sums: Vec<f64>,
}

impl<'g> SzegedyWalk<'g> {
    pub fn new(g: &'g GoogleMatrix) -> Self {
        let n = g.dim();
        let col_sums = (0..n).map(|j| g.column(j).iter().sum()).collect();
        SzegedyWalk {
            g,
            d: DMatrix::new(g),
            col_sums,
        }
    }

    pub fn d_matrix(&self) -> &DMatrix {
        &self.d
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// Measurement given `da = D a`.
    fn measure_into(&self, state: &WalkState, da: &[f64], scratch: &mut [f64], out: &mut [f64]) {
        for (s, a) in scratch.iter_mut().zip(&state.a) {
            *s = a * a;
        }
        self.g.mul_vec(scratch, out);
        for i in 0..out.len() {
            let b = state.b[i];
            let v = out[i] + 2.0 * b * da[i] + b * b * self.col_sums[i];
            out[i] = if v < 0.0 { 0.0 } else { v };
        }
    }

    /// Instantaneous distribution of an arbitrary state.
    pub fn measure(&self, state: &WalkState) -> ImportanceVector {
        let n = self.dim();
        let mut da = vec![0.0; n];
        self.d.mul_vec(&state.a, &mut da);
        let mut scratch = vec![0.0; n];
        let mut out = vec![0.0; n];
        self.measure_into(state, &da, &mut scratch, &mut out);
        ImportanceVector::from_raw(out)
    }

    /// Runs `t = 0..horizon`, calling `visit(t, I_q(., t))` on each
    /// distribution. The state at `t` is `U^{2t} |psi_0>`.
    pub fn evolve<F>(&self, horizon: usize, mut visit: F)
    where
        F: FnMut(usize, &[f64]),
    {
        let n = self.dim();
        let mut state = WalkState::initial(n);
        let mut da = vec![0.0; n];
        self.d.mul_vec(&state.a, &mut da);
        let mut db = vec![0.0; n];
        let mut scratch = vec![0.0; n];
        let mut dist = vec![0.0; n];
        for t in 0..horizon {
            self.measure_into(&state, &da, &mut scratch, &mut dist);
            visit(t, &dist);
            if t + 1 == horizon {
                break;
            }
            // U twice; D a of the result is -D b of the intermediate state.
            for _ in 0..2 {
                self.d.mul_vec(&state.b, &mut db);
                for ((a, b), db) in state.a.iter_mut().zip(&mut state.b).zip(&db) {
                    let old = *a;
                    *a = -*b;
                    *b = old + 2.0 * db;
                }
            }
            for (x, y) in da.iter_mut().zip(&db) {
                *x = -y;
            }
        }
    }

    /// Average quantum PageRank over `t = 0..horizon`.
    pub fn average(&self, horizon: usize) -> AverageQpr {
        let horizon = horizon.max(1);
        let n = self.dim();
        let half = horizon / 2;
        let mut acc = vec![0.0; n];
        let mut acc_half = vec![0.0; n];
        self.evolve(horizon, |t, dist| {
            for (s, v) in acc.iter_mut().zip(dist) {
                *s += v;
            }
            if t + 1 == half {
                acc_half.copy_from_slice(&acc);
            }
        });
        let avg: Vec<f64> = acc.iter().map(|s| s / horizon as f64).collect();
        let convergence = if half == 0 {
            f64::NAN
        } else {
            avg.iter()
                .zip(&acc_half)
                .map(|(a, h)| (a - h / half as f64).abs())
                .fold(0.0, f64::max)
        };
        AverageQpr {
            importance: ImportanceVector::from_raw(avg),
            horizon,
            convergence,
        }
    }

    /// CSV trajectory with columns `t,node,iq`.
    pub fn trajectory_csv(&self, horizon: usize) -> String {
        let mut out = String::from("t,node,iq\n");
        self.evolve(horizon, |t, dist| {
            for (i, v) in dist.iter().enumerate() {
                let _ = writeln!(out, "{t},{i},{}", crate::report::fmt_f64(*v));
            }
        });
        out
    }
}

/// Average quantum PageRank of `g` over `horizon` time units.
pub fn average_qpr(g: &GoogleMatrix, horizon: usize) -> AverageQpr {
    SzegedyWalk::new(g).average(horizon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{erdos_renyi, DirectedGraph, GeneratorSpec};

    fn google(g: &DirectedGraph, alpha: f64) -> GoogleMatrix {
        GoogleMatrix::from_graph(g, alpha).unwrap()
    }

    #[test]
    fn initial_state_two_nodes() {
        let s = WalkState::initial(2);
        assert_eq!(s.a, vec![0.7071067811865475, 0.7071067811865475]);
        assert_eq!(s.b, vec![0.0, 0.0]);
        for n in [1, 2, 5, 17] {
            let gm = google(&DirectedGraph::cycle(n), 0.85);
            let d = DMatrix::new(&gm);
            assert!((init_state(&gm).norm_sqr(&d) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn d_matrix_symmetric_in_unit_interval() {
        let gm = google(&erdos_renyi(20, 0.2, 4).unwrap(), 0.7);
        let d = DMatrix::new(&gm);
        for j in 0..20 {
            for k in 0..20 {
                assert_eq!(d.get(j, k), d.get(k, j));
                assert!((0.0..=1.0).contains(&d.get(j, k)));
            }
        }
    }

    #[test]
    fn step_fixes_projector_image() {
        let gm = google(&erdos_renyi(6, 0.3, 1).unwrap(), 0.85);
        let d = DMatrix::new(&gm);
        let a: Vec<f64> = (0..6).map(|i| (i as f64 + 1.0) / 10.0).collect();
        let s0 = WalkState {
            a: a.clone(),
            b: vec![0.0; 6],
        };
        let s1 = step_u(&s0, &d);
        assert!(s1.a.iter().all(|&x| x == 0.0));
        assert_eq!(s1.b, a);

        let s2 = step_u(&s1, &d);
        let mut da = vec![0.0; 6];
        d.mul_vec(&a, &mut da);
        for i in 0..6 {
            assert_eq!(s2.a[i], -a[i]);
            assert!((s2.b[i] - 2.0 * da[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn step_preserves_norm() {
        let gm = google(&erdos_renyi(8, 0.35, 9).unwrap(), 0.6);
        let d = DMatrix::new(&gm);
        let mut s = init_state(&gm);
        for k in 0..7 {
            s = step_u(&s, &d);
            if k == 2 {
                // perturb along an arbitrary direction, then renormalise
                s.a[3] += 0.3;
                s.b[1] -= 0.2;
                let nrm = s.norm_sqr(&d).sqrt();
                s.a.iter_mut().chain(s.b.iter_mut()).for_each(|x| *x /= nrm);
            }
            assert!((s.norm_sqr(&d) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn t0_distribution_is_row_average() {
        let g = erdos_renyi(9, 0.3, 2).unwrap();
        let gm = google(&g, 0.85);
        let walk = SzegedyWalk::new(&gm);
        let mut first = Vec::new();
        walk.evolve(1, |_, d| first = d.to_vec());
        for (i, &v) in first.iter().enumerate() {
            let row: f64 = (0..9).map(|j| gm.get(i, j)).sum::<f64>() / 9.0;
            assert!((v - row).abs() < 1e-15);
        }
    }

    #[test]
    fn literal_and_expanded_measurements_agree() {
        let g = GeneratorSpec::scale_free(15, 3).generate().unwrap();
        let gm = google(&g, 0.85);
        let r = SqrtGoogle::new(&gm);
        let walk = SzegedyWalk::new(&gm);
        let mut s = init_state(&gm);
        for _ in 0..30 {
            let lit = instantaneous_qpr(&s, &r);
            let exp = walk.measure(&s);
            for i in 0..15 {
                assert!((lit[i] - exp[i]).abs() < 1e-13);
            }
            s = step_u(&step_u(&s, walk.d_matrix()), walk.d_matrix());
        }
    }

    #[test]
    fn evolve_matches_step_u() {
        let g = erdos_renyi(10, 0.25, 5).unwrap();
        let gm = google(&g, 0.5);
        let walk = SzegedyWalk::new(&gm);
        let mut expected = Vec::new();
        let mut s = init_state(&gm);
        for _ in 0..20 {
            expected.push(walk.measure(&s).into_inner());
            s = step_u(&step_u(&s, walk.d_matrix()), walk.d_matrix());
        }
        walk.evolve(20, |t, d| {
            for i in 0..10 {
                assert!((d[i] - expected[t][i]).abs() < 1e-12);
            }
        });
    }

    #[test]
    fn symmetric_graphs_give_uniform_average() {
        for alpha in [0.1, 0.5, 0.85] {
            let avg = average_qpr(&google(&DirectedGraph::cycle(2), alpha), 37);
            assert!(avg.importance.values().iter().all(|v| (v - 0.5).abs() < 1e-12));
            let avg = average_qpr(&google(&DirectedGraph::cycle(3), alpha), 50);
            assert!(avg.importance.values().iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-12));
        }
    }

    #[test]
    fn average_is_deterministic_and_normalised() {
        let g = GeneratorSpec::scale_free(40, 8).generate().unwrap();
        let gm = google(&g, 0.85);
        let a = average_qpr(&gm, 300);
        let b = average_qpr(&gm, 300);
        assert_eq!(a.importance, b.importance);
        assert!((a.importance.sum() - 1.0).abs() < 1e-9);
        assert!(a.convergence.is_finite());
    }

    #[test]
    fn trajectory_csv_layout() {
        let gm = google(&DirectedGraph::cycle(3), 0.85);
        let csv = SzegedyWalk::new(&gm).trajectory_csv(2);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,node,iq");
        assert_eq!(lines.len(), 1 + 2 * 3);
        assert!(lines[4].starts_with("1,0,"));
    }
}

//! Graph generators for the network families studied here.
//!
//! Randomness comes from [`SplitMixSource`], a SplitMix64 stream seeded
//! directly with the user seed. Floats are `(x >> 11) * 2^-53` and bounded
//! indices are `(x * n) >> 64` on the 128-bit product, so a given seed yields
//! the same graph on every platform and every version of this crate.
//!
//! # Hierarchical families
//!
//! Both hierarchical constructions are deterministic. The ternary family
//! (`3^g` nodes) starts from the directed 3-cycle `0 -> 1 -> 2 -> 0` with root
//! `0` and peripheral nodes `{1, 2}`. Generation `g` takes three copies of
//! generation `g - 1` laid out at offsets `0`, `m`, `2m` (`m = 3^(g-1)`):
//!
//! ```text
//!   [copy 0]  root 0       arcs added on top of the copies:
//!   [copy 1]  root m         0 -> m -> 2m -> 0
//!   [copy 2]  root 2m        p -> 0   for every peripheral p of copies 1 and 2
//! ```
//!
//! Those nodes become the peripheral set of generation `g`.
//!
//! The outerplanar family (`2^(g+1)` nodes) starts at generation 0 from the
//! single arc `1 -> 0`. Generation `g` places two copies `A = [0, m)` and
//! `B = [m, 2m)` side by side along the outer boundary and closes it with
//!
//! ```text
//!   A: 0 .. m-1   B: m .. 2m-1
//!        m   -> m-1      (chains the two boundary paths)
//!        2m-1 -> 0       (closes the outer face)
//! ```
//!
//! so arcs always point from the newer copy to the older one. All chords are
//! nested intervals of the boundary order, so every generation is outerplanar.

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use super::DirectedGraph;
use crate::error::{Error, Result};

/// Seeded SplitMix64 stream with version-stable float and index sampling.
pub struct SplitMixSource(SplitMix64);

impl SplitMixSource {
    pub fn new(seed: u64) -> Self {
        SplitMixSource(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..n`. `n` must be positive.
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.0.next_u64() as u128 * n as u128) >> 64) as usize
    }
}

/// Parameters of the directed preferential-attachment model.
///
/// Each growth step picks one of three moves: with probability `alpha` a new
/// node links to an existing node chosen by in-degree; with `beta` an arc is
/// added between existing nodes (source by out-degree, target by in-degree);
/// with `gamma` an existing node chosen by out-degree links to a new node.
/// `delta_in` / `delta_out` bias the choice toward low-degree nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleFreeParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta_in: f64,
    pub delta_out: f64,
    #[serde(default)]
    pub allow_self_loops: bool,
}

impl Default for ScaleFreeParams {
    fn default() -> Self {
        ScaleFreeParams {
            alpha: 0.41,
            beta: 0.54,
            gamma: 0.05,
            delta_in: 0.2,
            delta_out: 0.0,
            allow_self_loops: false,
        }
    }
}

impl ScaleFreeParams {
    pub fn validate(&self) -> Result<()> {
        let probs = [self.alpha, self.beta, self.gamma];
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::param("attachment probabilities must be nonnegative"));
        }
        if (probs.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::param("attachment probabilities must sum to 1"));
        }
        if !(self.delta_in >= 0.0 && self.delta_out >= 0.0) {
            return Err(Error::param("delta offsets must be nonnegative"));
        }
        Ok(())
    }
}

/// Network family together with its size parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    ScaleFree {
        n: usize,
        #[serde(default)]
        params: ScaleFreeParams,
    },
    ErdosRenyi {
        n: usize,
        p: f64,
    },
    HierarchicalTernary {
        generation: u32,
    },
    HierarchicalOuterplanar {
        generation: u32,
    },
}

impl Family {
    /// Short tag used in file names.
    pub fn tag(&self) -> &'static str {
        match self {
            Family::ScaleFree { .. } => "sf",
            Family::ErdosRenyi { .. } => "er",
            Family::HierarchicalTernary { .. } => "hier3",
            Family::HierarchicalOuterplanar { .. } => "outerplanar",
        }
    }

    /// Node count of the generated graph.
    pub fn node_count(&self) -> usize {
        match *self {
            Family::ScaleFree { n, .. } | Family::ErdosRenyi { n, .. } => n,
            Family::HierarchicalTernary { generation } => 3usize.pow(generation),
            Family::HierarchicalOuterplanar { generation } => 1usize << (generation + 1),
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, Family::ScaleFree { .. } | Family::ErdosRenyi { .. })
    }
}

/// A family plus the seed that fixes one instance of it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub family: Family,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn scale_free(n: usize, seed: u64) -> Self {
        GeneratorSpec {
            family: Family::ScaleFree {
                n,
                params: ScaleFreeParams::default(),
            },
            seed,
        }
    }

    pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Self {
        GeneratorSpec {
            family: Family::ErdosRenyi { n, p },
            seed,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        GeneratorSpec {
            family: self.family.clone(),
            seed,
        }
    }

    pub fn generate(&self) -> Result<DirectedGraph> {
        match &self.family {
            Family::ScaleFree { n, params } => scale_free(*n, params, self.seed),
            Family::ErdosRenyi { n, p } => erdos_renyi(*n, *p, self.seed),
            Family::HierarchicalTernary { generation } => hierarchical_ternary(*generation),
            Family::HierarchicalOuterplanar { generation } => hierarchical_outerplanar(*generation),
        }
    }
}

/// Picks a node from `candidates` (one entry per unit of degree), or with
/// probability `|nodes| delta / (|nodes| delta + |candidates|)` uniformly
/// among all `node_count` nodes.
fn choose_node(
    rng: &mut SplitMixSource,
    candidates: &[usize],
    node_count: usize,
    delta: f64,
) -> usize {
    if delta > 0.0 {
        let bias = node_count as f64 * delta;
        let p_delta = bias / (bias + candidates.len() as f64);
        if rng.next_f64() < p_delta {
            return rng.index(node_count);
        }
    }
    candidates[rng.index(candidates.len())]
}

/// Directed scale-free graph grown from the 3-cycle `0 -> 1 -> 2 -> 0`.
pub fn scale_free(n: usize, params: &ScaleFreeParams, seed: u64) -> Result<DirectedGraph> {
    if n < 3 {
        return Err(Error::param("scale-free graphs need at least 3 nodes"));
    }
    params.validate()?;
    let mut rng = SplitMixSource::new(seed);

    let mut arcs: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (2, 0)];
    // sources and targets repeated once per arc: degree-proportional sampling
    let mut sources: Vec<usize> = vec![0, 1, 2];
    let mut targets: Vec<usize> = vec![1, 2, 0];
    let mut nodes = 3usize;

    while nodes < n {
        let r = rng.next_f64();
        let (v, w) = if r < params.alpha {
            let v = nodes;
            nodes += 1;
            let w = choose_node(&mut rng, &targets, nodes, params.delta_in);
            (v, w)
        } else if r < params.alpha + params.beta {
            let v = choose_node(&mut rng, &sources, nodes, params.delta_out);
            let w = choose_node(&mut rng, &targets, nodes, params.delta_in);
            (v, w)
        } else {
            let v = choose_node(&mut rng, &sources, nodes, params.delta_out);
            let w = nodes;
            nodes += 1;
            (v, w)
        };
        arcs.push((v, w));
        sources.push(v);
        targets.push(w);
    }

    if params.allow_self_loops {
        DirectedGraph::with_self_loops(n, arcs)
    } else {
        DirectedGraph::new(n, arcs.into_iter().filter(|(s, t)| s != t))
    }
}

/// Every ordered pair `(i, j)`, `i != j`, is an arc independently with
/// probability `p`. Pairs are visited source-major.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<DirectedGraph> {
    if n == 0 {
        return Err(Error::param("Erdos-Renyi graphs need at least 1 node"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = SplitMixSource::new(seed);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.next_f64() < p {
                arcs.push((i, j));
            }
        }
    }
    DirectedGraph::new(n, arcs)
}

pub const TERNARY_MAX_GENERATION: u32 = 4;
pub const OUTERPLANAR_MAX_GENERATION: u32 = 6;

/// Ternary hierarchical graph of generation `1..=4` with `3^generation` nodes.
pub fn hierarchical_ternary(generation: u32) -> Result<DirectedGraph> {
    if !(1..=TERNARY_MAX_GENERATION).contains(&generation) {
        return Err(Error::param(format!(
            "ternary hierarchical generation {generation} outside 1..={TERNARY_MAX_GENERATION}"
        )));
    }
    let mut arcs = vec![(0, 1), (1, 2), (2, 0)];
    let mut peripheral = vec![1usize, 2];
    let mut size = 3usize;
    for _ in 1..generation {
        let mut next_arcs = Vec::with_capacity(3 * arcs.len() + 2 * peripheral.len() + 3);
        for c in 0..3 {
            let off = c * size;
            next_arcs.extend(arcs.iter().map(|&(s, t)| (s + off, t + off)));
        }
        next_arcs.extend([(0, size), (size, 2 * size), (2 * size, 0)]);
        let next_peripheral: Vec<usize> = (1..3)
            .flat_map(|c| peripheral.iter().map(move |&p| p + c * size))
            .collect();
        next_arcs.extend(next_peripheral.iter().map(|&p| (p, 0)));
        arcs = next_arcs;
        peripheral = next_peripheral;
        size *= 3;
    }
    DirectedGraph::new(size, arcs)
}

/// Outerplanar hierarchical graph of generation `1..=6` with `2^(generation+1)` nodes.
pub fn hierarchical_outerplanar(generation: u32) -> Result<DirectedGraph> {
    if !(1..=OUTERPLANAR_MAX_GENERATION).contains(&generation) {
        return Err(Error::param(format!(
            "outerplanar hierarchical generation {generation} outside 1..={OUTERPLANAR_MAX_GENERATION}"
        )));
    }
    let mut arcs = vec![(1usize, 0usize)];
    let mut size = 2usize;
    for _ in 0..generation {
        let mut next_arcs: Vec<(usize, usize)> = arcs.clone();
        next_arcs.extend(arcs.iter().map(|&(s, t)| (s + size, t + size)));
        next_arcs.push((size, size - 1));
        next_arcs.push((2 * size - 1, 0));
        arcs = next_arcs;
        size *= 2;
    }
    DirectedGraph::new(size, arcs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_mix_reference_stream() {
        let mut rng = SplitMixSource::new(1477776061723855037);
        assert_eq!(rng.next_u64(), 1985237415132408290);
        assert_eq!(rng.next_u64(), 2979275885539914483);
    }

    #[test]
    fn scale_free_smallest() {
        let g = scale_free(3, &ScaleFreeParams::default(), 99).unwrap();
        assert_eq!(g.node_count(), 3);
        assert!(g.edge_count() >= 2);
    }

    #[test]
    fn scale_free_deterministic() {
        let p = ScaleFreeParams::default();
        assert_eq!(scale_free(200, &p, 5).unwrap(), scale_free(200, &p, 5).unwrap());
        assert_ne!(scale_free(200, &p, 5).unwrap(), scale_free(200, &p, 6).unwrap());
    }

    #[test]
    fn scale_free_rejects_bad_probabilities() {
        let mut p = ScaleFreeParams {
            alpha: 0.5,
            ..Default::default()
        };
        assert!(matches!(scale_free(10, &p, 0), Err(Error::Parameter(_))));
        p.alpha = -0.01;
        p.beta = 0.96;
        assert!(scale_free(10, &p, 0).is_err());
        assert!(scale_free(2, &ScaleFreeParams::default(), 0).is_err());
    }

    #[test]
    fn scale_free_self_loop_flag() {
        let mut p = ScaleFreeParams::default();
        let plain = scale_free(256, &p, 3).unwrap();
        assert_eq!(plain.self_loop_count(), 0);
        p.allow_self_loops = true;
        let looped = scale_free(256, &p, 3).unwrap();
        assert!(looped.edge_count() >= plain.edge_count());
        assert_eq!(looped.edge_count() - looped.self_loop_count(), plain.edge_count());
    }

    #[test]
    fn scale_free_hubs_dominate() {
        let mut hits = 0;
        for seed in 0..20 {
            let g = scale_free(256, &ScaleFreeParams::default(), seed).unwrap();
            let mut d = g.in_degrees();
            d.sort_unstable();
            let median = d[d.len() / 2];
            let max = *d.last().unwrap();
            if max >= 10 * median.max(1) {
                hits += 1;
            }
        }
        assert!(hits >= 18, "hub dominance held in {hits}/20 seeds");
    }

    #[test]
    fn erdos_renyi_extremes() {
        assert_eq!(erdos_renyi(10, 0.0, 1).unwrap().edge_count(), 0);
        let g = erdos_renyi(4, 1.0, 1).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.self_loop_count(), 0);
        assert!(erdos_renyi(4, 1.5, 1).is_err());
        assert!(erdos_renyi(4, -0.1, 1).is_err());
    }

    #[test]
    fn erdos_renyi_binomial_mean() {
        let total: usize = (0..100)
            .map(|s| erdos_renyi(64, 0.125, s).unwrap().edge_count())
            .sum();
        let mean = total as f64 / 100.0;
        // standard error of the mean over 100 draws is 21 / 10
        assert!((mean - 504.0).abs() < 3.0 * 21.0 / 10.0, "mean {mean}");
    }

    #[test]
    fn ternary_node_counts() {
        let g1 = hierarchical_ternary(1).unwrap();
        assert_eq!(g1, DirectedGraph::cycle(3));
        for gen in 1..=4 {
            let g = hierarchical_ternary(gen).unwrap();
            assert_eq!(g.node_count(), 3usize.pow(gen));
            assert_eq!(g, hierarchical_ternary(gen).unwrap());
        }
        assert!(hierarchical_ternary(0).is_err());
        assert!(hierarchical_ternary(5).is_err());
    }

    #[test]
    fn ternary_generation_two_layout() {
        let g = hierarchical_ternary(2).unwrap();
        // copy cycles + root cycle + 4 peripheral arcs into the root
        assert_eq!(g.edge_count(), 9 + 3 + 4);
        for p in [4, 5, 7, 8] {
            assert!(g.has_edge(p.into(), 0.into()));
        }
        assert!(g.has_edge(0.into(), 3.into()));
        assert!(g.has_edge(3.into(), 6.into()));
        assert!(g.has_edge(6.into(), 0.into()));
    }

    #[test]
    fn outerplanar_node_counts() {
        let mut prev = 0;
        for gen in 1..=6 {
            let g = hierarchical_outerplanar(gen).unwrap();
            assert_eq!(g.node_count(), 1 << (gen + 1));
            if prev > 0 {
                assert_eq!(g.node_count(), 2 * prev);
            }
            prev = g.node_count();
            // e(g) = 2 e(g-1) + 2 with e(0) = 1
            assert_eq!(g.edge_count(), 3 * (1 << gen) - 2);
        }
        assert_eq!(hierarchical_outerplanar(4).unwrap().node_count(), 32);
        assert_eq!(hierarchical_outerplanar(6).unwrap().node_count(), 128);
        assert!(hierarchical_outerplanar(0).is_err());
        assert!(hierarchical_outerplanar(7).is_err());
    }

    #[test]
    fn spec_serializes() {
        let spec = GeneratorSpec::erdos_renyi(64, 0.125, 7);
        let json = serde_json::to_string(&spec).unwrap();
        let back: GeneratorSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }
}

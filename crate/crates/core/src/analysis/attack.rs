use serde::{Deserialize, Serialize};

use super::{kendall_coefficient, Experiment, Ranker};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId};

/// Which node goes next in a coordinated attack.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HubSelection {
    /// The k-th removal takes the k-th node of the intact graph's ranking.
    #[default]
    Initial,
    /// Every removal takes the top node of the current reduced graph.
    Adaptive,
}

/// Removes up to `n_max` hubs one at a time and returns `K_1..K_n_max`, where
/// `K_k` compares the reduced-graph ranking with the intact ranking restricted
/// to the survivors.
pub fn attack_experiment(
    g: &DirectedGraph,
    n_max: usize,
    ranker: &Ranker,
    selection: HubSelection,
) -> Result<Vec<f64>> {
    let n = g.node_count();
    if n_max >= n {
        return Err(Error::param(format!(
            "cannot remove {n_max} nodes from a {n}-node graph"
        )));
    }
    let initial = ranker.rank(g)?.order();
    let mut current = g.clone();
    // original id of every node of `current`
    let mut origin: Vec<NodeId> = (0..n).map(NodeId).collect();
    let mut top_now = initial[0];
    let mut removed = vec![false; n];
    let mut ks = Vec::with_capacity(n_max);

    for k in 0..n_max {
        let target = match selection {
            HubSelection::Initial => initial[k],
            HubSelection::Adaptive => top_now,
        };
        let local = origin
            .iter()
            .position(|&o| o == target)
            .expect("target is still present");
        let (reduced, _) = current.remove_node(NodeId(local))?;
        origin.remove(local);
        removed[target.index()] = true;
        current = reduced;

        let order: Vec<NodeId> = ranker
            .rank(&current)?
            .order()
            .into_iter()
            .map(|v| origin[v.index()])
            .collect();
        top_now = order[0];
        let reference: Vec<NodeId> = initial
            .iter()
            .copied()
            .filter(|v| !removed[v.index()])
            .collect();
        ks.push(kendall_coefficient(&order, &reference)?);
    }
    Ok(ks)
}

/// Ensemble wrapper reporting `K_1..K_removals`.
pub struct AttackExperiment {
    pub ranker: Ranker,
    pub removals: usize,
    pub selection: HubSelection,
}

impl Experiment for AttackExperiment {
    fn name(&self) -> &str {
        "attack"
    }

    fn metrics(&self) -> Vec<String> {
        (1..=self.removals).map(|k| format!("k{k}")).collect()
    }

    fn run(&self, g: &DirectedGraph) -> Result<Vec<f64>> {
        attack_experiment(g, self.removals, &self.ranker, self.selection)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cycle_single_pair() {
        let g = DirectedGraph::cycle(3);
        for ranker in [Ranker::classical(0.85), Ranker::quantum(0.85, 50)] {
            let k = attack_experiment(&g, 1, &ranker, HubSelection::Initial).unwrap();
            assert_eq!(k.len(), 1);
            assert!(k[0] == 0.0 || k[0] == 1.0);
        }
    }

    #[test]
    fn rejects_too_many_removals() {
        let g = DirectedGraph::cycle(3);
        assert!(attack_experiment(&g, 3, &Ranker::classical(0.85), HubSelection::Initial).is_err());
    }

    #[test]
    fn selections_agree_on_first_removal() {
        let g = crate::graph::scale_free(24, &Default::default(), 5).unwrap();
        let r = Ranker::classical(0.85);
        let a = attack_experiment(&g, 3, &r, HubSelection::Initial).unwrap();
        let b = attack_experiment(&g, 3, &r, HubSelection::Adaptive).unwrap();
        assert_eq!(a[0], b[0]);
        assert!(a.iter().chain(&b).all(|k| (0.0..=1.0).contains(k)));
    }
}

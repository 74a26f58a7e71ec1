use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Nodes sorted by importance, descending; ties go to the lower id first.
#[derive(Clone, Debug, PartialEq)]
pub struct RankList {
    entries: Vec<(NodeId, f64)>,
}

impl RankList {
    pub fn from_importance(values: &[f64]) -> Self {
        let mut entries: Vec<(NodeId, f64)> = values
            .iter()
            .enumerate()
            .map(|(i, &v)| (NodeId(i), v))
            .collect();
        entries.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        RankList { entries }
    }

    pub fn entries(&self) -> &[(NodeId, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn top(&self) -> Option<NodeId> {
        self.entries.first().map(|e| e.0)
    }

    pub fn order(&self) -> Vec<NodeId> {
        self.entries.iter().map(|e| e.0).collect()
    }

    /// Importances in rank order.
    pub fn importances(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.1).collect()
    }

    /// 1-based rank of every node, indexed by node id.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.entries.len()];
        for (pos, (id, _)) in self.entries.iter().enumerate() {
            r[id.0] = pos + 1;
        }
        r
    }
}

/// Concordant fraction of pairs between two orderings of the same set.
///
/// Equals `(1 + tau) / 2`: 1 for identical orders, 0 for exact reversal.
/// Orders of fewer than two elements have no pairs and score 1.
pub fn kendall_coefficient(a: &[NodeId], b: &[NodeId]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::param(format!(
            "orders have different lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let pos_b: HashMap<NodeId, usize> = b.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    if pos_b.len() != b.len() {
        return Err(Error::param("order contains duplicate elements"));
    }
    let mut seq = Vec::with_capacity(a.len());
    let mut seen = std::collections::HashSet::with_capacity(a.len());
    for v in a {
        if !seen.insert(*v) {
            return Err(Error::param("order contains duplicate elements"));
        }
        match pos_b.get(v) {
            Some(&p) => seq.push(p),
            None => return Err(Error::param(format!("node {v} missing from second order"))),
        }
    }
    let m = seq.len();
    if m < 2 {
        return Ok(1.0);
    }
    let pairs = (m * (m - 1) / 2) as f64;
    let discordant = count_inversions(&mut seq) as f64;
    Ok((pairs - discordant) / pairs)
}

/// Merge-sort inversion count; sorts `v` in place.
fn count_inversions(v: &mut [usize]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = count_inversions(&mut v[..mid]) + count_inversions(&mut v[mid..]);
    let mut merged = Vec::with_capacity(n);
    let (mut i, mut j) = (0, mid);
    while i < mid && j < n {
        if v[i] <= v[j] {
            merged.push(v[i]);
            i += 1;
        } else {
            merged.push(v[j]);
            inv += (mid - i) as u64;
            j += 1;
        }
    }
    merged.extend_from_slice(&v[i..mid]);
    merged.extend_from_slice(&v[j..n]);
    v.copy_from_slice(&merged);
    inv
}

/// Number of distinct importance values in the bottom half of the list,
/// where values closer than `resolution` count as one.
pub fn degeneracy_resolution(ranks: &RankList, resolution: f64) -> usize {
    let vals = ranks.importances();
    let bottom = &vals[vals.len() / 2..];
    if bottom.is_empty() {
        return 0;
    }
    // the list is already descending
    let mut distinct = 1;
    let mut anchor = bottom[0];
    for &v in &bottom[1..] {
        if anchor - v > resolution {
            distinct += 1;
            anchor = v;
        }
    }
    distinct
}

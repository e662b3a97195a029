//! Brute-force distance-hereditary test by forbidden induced subgraphs.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use serde::{Deserialize, Serialize};
use std::fmt;

pub const DEFAULT_ORACLE_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", content = "length", rename_all = "snake_case")]
pub enum ForbiddenKind {
    /// Chordless cycle on at least five vertices.
    Cycle(usize),
    House,
    Gem,
    Domino,
}

impl fmt::Display for ForbiddenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForbiddenKind::Cycle(k) => write!(f, "chordless cycle C{k}"),
            ForbiddenKind::House => f.write_str("house"),
            ForbiddenKind::Gem => f.write_str("gem"),
            ForbiddenKind::Domino => f.write_str("domino"),
        }
    }
}

/// An induced copy of a forbidden graph. For cycles `vertices` is in cycle
/// order; otherwise `vertices[i]` plays the role of pattern vertex `i` (see
/// [`pattern_edges`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenSubgraph {
    #[serde(flatten)]
    pub kind: ForbiddenKind,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DhVerdict {
    DistanceHereditary,
    Forbidden(ForbiddenSubgraph),
}

/// Edge lists of the fixed forbidden graphs on `0..5` or `0..6`.
///
/// House: 4-cycle 0-1-3-4 with roof 2 on 1 and 3. Gem: path 1-2-3-4 with apex
/// 0. Domino: 6-cycle 0..5 with chord 0-3.
pub fn pattern_edges(kind: ForbiddenKind) -> Vec<(usize, usize)> {
    match kind {
        ForbiddenKind::Cycle(k) => (0..k).map(|i| (i, (i + 1) % k)).collect(),
        ForbiddenKind::House => vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)],
        ForbiddenKind::Gem => vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)],
        ForbiddenKind::Domino => vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)],
    }
}

/// Decides whether the unweighted support of `g` is distance hereditary by
/// searching vertex subsets in order of size for an induced long cycle,
/// house, gem or domino. Graphs above `cap` vertices are refused.
pub fn is_distance_hereditary_oracle(g: &WeightedGraph, cap: usize) -> Result<DhVerdict> {
    let n = g.n();
    if n > cap {
        return Err(Error::SizeCapExceeded { n, cap });
    }
    g.require_connected()?;
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).fold(0u64, |m, u| m | 1 << u)).collect();
    for k in 5..=n {
        let mut found = None;
        for_each_subset(n, k, &mut |s| {
            found = classify(&adj, s);
            found.is_some()
        });
        if let Some(f) = found {
            return Ok(DhVerdict::Forbidden(f));
        }
    }
    Ok(DhVerdict::DistanceHereditary)
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns true.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    let mut s: Vec<usize> = (0..k).collect();
    loop {
        if f(&s) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| s[i] < n - k + i) else { return };
        s[i] += 1;
        for j in i + 1..k {
            s[j] = s[j - 1] + 1;
        }
    }
}

fn classify(adj: &[u64], s: &[usize]) -> Option<ForbiddenSubgraph> {
    let mask = s.iter().fold(0u64, |m, &v| m | 1 << v);
    let deg = |v: usize| (adj[v] & mask).count_ones();
    if s.iter().all(|&v| deg(v) == 2) {
        if let Some(order) = cycle_order(adj, s, mask) {
            return Some(ForbiddenSubgraph { kind: ForbiddenKind::Cycle(s.len()), vertices: order });
        }
    }
    let kinds: &[ForbiddenKind] = match s.len() {
        5 => &[ForbiddenKind::House, ForbiddenKind::Gem],
        6 => &[ForbiddenKind::Domino],
        _ => &[],
    };
    kinds.iter().find_map(|&kind| {
        embed(adj, s, &pattern_edges(kind)).map(|vertices| ForbiddenSubgraph { kind, vertices })
    })
}

/// Walks a 2-regular induced subgraph; `None` when it is not a single cycle.
fn cycle_order(adj: &[u64], s: &[usize], mask: u64) -> Option<Vec<usize>> {
    let mut order = vec![s[0]];
    let mut prev = usize::MAX;
    let mut cur = s[0];
    loop {
        let nbrs = adj[cur] & mask;
        let next = (0..64).find(|&b| nbrs >> b & 1 == 1 && b != prev).unwrap();
        if next == s[0] {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
        if order.len() > s.len() {
            return None;
        }
    }
    (order.len() == s.len()).then_some(order)
}

/// Finds `phi` with `phi[i] in s` such that `ij` is a pattern edge iff
/// `phi[i] phi[j]` is an edge.
fn embed(adj: &[u64], s: &[usize], edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let k = s.len();
    let mut pat = vec![0u64; k];
    for &(a, b) in edges {
        pat[a] |= 1 << b;
        pat[b] |= 1 << a;
    }
    let mut phi = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn go(adj: &[u64], s: &[usize], pat: &[u64], phi: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = phi.len();
        if i == s.len() {
            return true;
        }
        for j in 0..s.len() {
            if used[j] {
                continue;
            }
            let v = s[j];
            let ok = phi.iter().enumerate().all(|(a, &u)| (pat[i] >> a & 1 == 1) == (adj[v] >> u & 1 == 1));
            if ok {
                used[j] = true;
                phi.push(v);
                if go(adj, s, pat, phi, used) {
                    return true;
                }
                phi.pop();
                used[j] = false;
            }
        }
        false
    }
    go(adj, s, &pat, &mut phi, &mut used).then_some(phi)
}

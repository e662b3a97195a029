//! Cut-rank over the rationals and rank decompositions of width one.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::recognize::replay::Construction;
use crate::recognize::{ReductionTrace, TraceStep};
use crate::rational::Rational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

pub const DEFAULT_RANKWIDTH_CAP: usize = 7;

/// Rank of a dense rational matrix by Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, pivot);
        let head = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &head[col];
            for (x, h) in row.iter_mut().zip(&head).skip(col) {
                *x -= &f * h;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the weighted adjacency submatrix with rows `a` and columns
/// `V \ a`.
pub fn cut_rank(g: &WeightedGraph, a: &BTreeSet<usize>) -> Result<usize> {
    let n = g.n();
    if a.is_empty() || a.len() >= n || a.iter().any(|&v| v >= n) {
        return Err(Error::InvalidSubset(format!("{a:?} is not a proper nonempty subset of 0..{n}")));
    }
    let cols: Vec<usize> = (0..n).filter(|v| !a.contains(v)).collect();
    let rows = a
        .iter()
        .map(|&u| cols.iter().map(|&v| g.weight(u, v).cloned().unwrap_or_else(Rational::zero)).collect())
        .collect();
    Ok(rational_rank(rows))
}

fn cut_rank_mask(g: &WeightedGraph, mask: u32) -> usize {
    let a: BTreeSet<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
    cut_rank(g, &a).expect("proper subset")
}

/// A tree whose leaves are the graph's vertices and whose other nodes have
/// degree three.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTree {
    pub node_count: usize,
    /// `leaf_nodes[v]` is the tree node carrying graph vertex `v`.
    pub leaf_nodes: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutRankResult {
    pub edge: (usize, usize),
    /// Graph vertices on the side of `edge.0`.
    pub side: Vec<usize>,
    pub rank: usize,
}

impl DecompositionTree {
    pub fn single(vertex_count: usize, vertex: usize) -> Self {
        let mut leaf_nodes = vec![usize::MAX; vertex_count];
        leaf_nodes[vertex] = 0;
        DecompositionTree { node_count: 1, leaf_nodes, edges: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.leaf_nodes.len()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    fn vertex_of_node(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.node_count];
        for (v, &node) in self.leaf_nodes.iter().enumerate() {
            if node < self.node_count {
                out[node] = Some(v);
            }
        }
        out
    }

    /// Checks the shape: a tree, leaves in bijection with the vertices,
    /// every other node of degree three.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::LeafMismatch(msg));
        let n = self.vertex_count();
        let distinct: BTreeSet<usize> = self.leaf_nodes.iter().copied().collect();
        if distinct.len() != n || self.leaf_nodes.iter().any(|&x| x >= self.node_count) {
            return bad("leaf nodes are not distinct tree nodes".into());
        }
        if self.edges.len() + 1 != self.node_count {
            return bad(format!("{} edges on {} nodes", self.edges.len(), self.node_count));
        }
        let adj = self.adjacency();
        let owner = self.vertex_of_node();
        for (node, nbrs) in adj.iter().enumerate() {
            let leaf = owner[node].is_some();
            let ok = match (leaf, n) {
                (true, 1) => nbrs.is_empty(),
                (true, _) => nbrs.len() == 1,
                (false, _) => nbrs.len() == 3,
            };
            if !ok {
                return bad(format!("node {node} has degree {}", nbrs.len()));
            }
        }
        let mut seen = vec![false; self.node_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("tree is disconnected".into());
        }
        Ok(())
    }

    /// Vertex bitmask on the `a` side of each edge `(a, b)`.
    fn side_masks(&self) -> Vec<u32> {
        let adj = self.adjacency();
        let owner = self.vertex_of_node();
        self.edges
            .iter()
            .map(|&(a, b)| {
                let mut mask = 0u32;
                let mut stack = vec![(a, b)];
                while let Some((x, from)) = stack.pop() {
                    if let Some(v) = owner[x] {
                        mask |= 1 << v;
                    }
                    stack.extend(adj[x].iter().filter(|&&y| y != from).map(|&y| (y, x)));
                }
                mask
            })
            .collect()
    }

    /// Subdivides the edge at `vertex`'s leaf and hangs a new leaf for
    /// `added` there, making the two a cherry.
    fn add_beside(&mut self, vertex: usize, added: usize) {
        let leaf = self.leaf_nodes[vertex];
        let new_leaf = self.node_count;
        if self.edges.is_empty() {
            self.node_count += 1;
            self.edges.push((leaf, new_leaf));
        } else {
            let i = self.edges.iter().position(|&(a, b)| a == leaf || b == leaf).expect("a leaf has an edge");
            self.insert_on_edge(i, added);
            return;
        }
        self.leaf_nodes[added] = new_leaf;
    }

    /// Subdivides edge `i` and attaches a leaf for `vertex` at the new node.
    fn insert_on_edge(&mut self, i: usize, vertex: usize) {
        let (a, b) = self.edges[i];
        let mid = self.node_count;
        let leaf = mid + 1;
        self.node_count += 2;
        self.edges[i] = (a, mid);
        self.edges.push((mid, b));
        self.edges.push((mid, leaf));
        self.leaf_nodes[vertex] = leaf;
    }

    /// Parenthesized notation rooted at the node next to vertex 0's leaf,
    /// children ordered by their least vertex.
    pub fn render(&self, labels: &[String]) -> String {
        let owner = self.vertex_of_node();
        let adj = self.adjacency();
        fn sub(x: usize, from: usize, adj: &[Vec<usize>], owner: &[Option<usize>], labels: &[String]) -> (usize, String) {
            if let Some(v) = owner[x] {
                return (v, labels[v].clone());
            }
            join(adj[x].iter().filter(|&&y| y != from).map(|&y| sub(y, x, adj, owner, labels)).collect())
        }
        fn join(mut parts: Vec<(usize, String)>) -> (usize, String) {
            parts.sort();
            let least = parts[0].0;
            let body: Vec<String> = parts.into_iter().map(|(_, s)| s).collect();
            (least, format!("({})", body.join(", ")))
        }
        let Some(&start) = self.leaf_nodes.first() else { return "()".into() };
        match adj[start].first() {
            None => labels[0].clone(),
            Some(&next) if owner[next].is_some() => join(vec![(0, labels[0].clone()), sub(next, start, &adj, &owner, labels)]).1,
            Some(&next) => {
                join(adj[next].iter().map(|&y| sub(y, next, &adj, &owner, labels)).collect()).1
            }
        }
    }
}

/// Cut-rank of every tree edge.
pub fn edge_ranks(g: &WeightedGraph, t: &DecompositionTree) -> Result<Vec<CutRankResult>> {
    if t.vertex_count() != g.n() {
        return Err(Error::LeafMismatch(format!("tree has {} leaves, graph {} vertices", t.vertex_count(), g.n())));
    }
    t.validate()?;
    Ok(t.edges
        .iter()
        .zip(t.side_masks())
        .map(|(&edge, mask)| CutRankResult {
            edge,
            side: (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect(),
            rank: cut_rank_mask(g, mask),
        })
        .collect())
}

/// Largest cut-rank over the tree's edges.
pub fn tree_width(g: &WeightedGraph, t: &DecompositionTree) -> Result<usize> {
    Ok(edge_ranks(g, t)?.iter().map(|r| r.rank).max().unwrap_or(0))
}

/// A width-one decomposition of the graph a trace rebuilds: each vertex the
/// construction adds, as a copy or as a pendant, becomes a cherry with the
/// vertex it was attached to.
pub fn build_rank_decomposition(trace: &ReductionTrace) -> Result<DecompositionTree> {
    let mut c = Construction::start(trace)?;
    let mut tree = DecompositionTree::single(trace.vertex_count, trace.final_vertex);
    for step in trace.steps.iter().rev() {
        c.undo(step)?;
        match step {
            TraceStep::RemovePendant { vertex, attach, .. } => tree.add_beside(*attach, *vertex),
            TraceStep::RemoveTwin { removed, kept, .. } => tree.add_beside(*kept, *removed),
            TraceStep::ScaleVertex { .. } | TraceStep::SignFlipBlock { .. } => {}
        }
    }
    if c.live_count() != trace.vertex_count {
        return Err(Error::MalformedTrace("trace does not rebuild every vertex".into()));
    }
    Ok(tree)
}

/// All `(2n-5)!!` cubic trees with leaves `0..n` (one tree for n <= 3).
pub fn enumerate_cubic_trees(n: usize) -> Vec<DecompositionTree> {
    assert!(n >= 1);
    let mut base = DecompositionTree::single(n, 0);
    if n >= 2 {
        base.add_beside(0, 1);
    }
    let mut trees = vec![base];
    for v in 2..n {
        trees = trees
            .iter()
            .flat_map(|t| {
                (0..t.edges.len()).map(move |i| {
                    let mut t = t.clone();
                    t.insert_on_edge(i, v);
                    t
                })
            })
            .collect();
    }
    trees
}

/// Minimum width over every cubic tree on the graph's vertices.
pub fn exhaustive_min_rankwidth(g: &WeightedGraph, cap: usize) -> Result<usize> {
    let n = g.n();
    if n > cap {
        return Err(Error::SizeCapExceeded { n, cap });
    }
    if n < 2 {
        return Ok(0);
    }
    let full = (1u32 << n) - 1;
    let cache: Vec<usize> =
        (0..=full).map(|m| if m == 0 || m == full { 0 } else { cut_rank_mask(g, m) }).collect();
    Ok(enumerate_cubic_trees(n)
        .iter()
        .map(|t| t.side_masks().iter().map(|&m| cache[m as usize]).max().unwrap_or(0))
        .min()
        .expect("at least one tree"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{fixtures, random_stable_corpus, ConstructionOptions};
    use crate::graph::find_contractible_pairs;
    use crate::rational::int;
    use crate::recognize::{recognize, Recognition};
    use proptest::prelude::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    fn double_factorial(k: usize) -> usize {
        (1..=k).rev().step_by(2).product()
    }

    fn decomposition(g: &WeightedGraph) -> DecompositionTree {
        let Recognition::Accept(t) = recognize(g).unwrap() else { panic!() };
        build_rank_decomposition(&t).unwrap()
    }

    #[test]
    fn cut_rank_examples() {
        let c4 = fixtures::cycle(4);
        assert_eq!(cut_rank(&c4, &set(&[0, 1])).unwrap(), 2);
        assert_eq!(cut_rank(&c4, &set(&[0, 2])).unwrap(), 1);
        assert_eq!(cut_rank(&fixtures::k4_one_heavy(), &set(&[2, 3])).unwrap(), 1);
        assert_eq!(cut_rank(&c4, &set(&[3])).unwrap(), 1);
        assert!(matches!(cut_rank(&c4, &set(&[])), Err(Error::InvalidSubset(_))));
        assert!(matches!(cut_rank(&c4, &set(&[0, 1, 2, 3])), Err(Error::InvalidSubset(_))));
        assert!(matches!(cut_rank(&c4, &set(&[7])), Err(Error::InvalidSubset(_))));
    }

    #[test]
    fn rational_rank_differs_from_binary_rank() {
        // Over GF(2) this 3x3 matrix of ones off the diagonal has rank 2.
        let rows = vec![
            vec![int(0), int(1), int(1)],
            vec![int(1), int(0), int(1)],
            vec![int(1), int(1), int(0)],
        ];
        assert_eq!(rational_rank(rows), 3);
    }

    #[test]
    fn tree_counts() {
        for n in 3..=7 {
            let trees = enumerate_cubic_trees(n);
            assert_eq!(trees.len(), double_factorial(2 * n - 5));
            assert!(trees.iter().all(|t| t.validate().is_ok()));
        }
        assert_eq!(enumerate_cubic_trees(2).len(), 1);
    }

    #[test]
    fn width_one_decompositions() {
        for g in [fixtures::cycle(4), fixtures::star(3), fixtures::k4_one_heavy(), fixtures::complete(5)] {
            let t = decomposition(&g);
            assert_eq!(tree_width(&g, &t).unwrap(), 1, "{}", t.render(g.labels()));
        }
        let t = decomposition(&fixtures::cycle(4));
        assert_eq!(t.render(fixtures::cycle(4).labels()), "(1, (2, 4), 3)");
        let t = decomposition(&fixtures::k4_one_heavy());
        let sides: Vec<Vec<usize>> = edge_ranks(&fixtures::k4_one_heavy(), &t).unwrap().into_iter().map(|r| r.side).collect();
        assert!(sides.iter().any(|s| s == &vec![2, 3] || s == &vec![0, 1]));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(exhaustive_min_rankwidth(&fixtures::cycle(4), 7).unwrap(), 1);
        assert_eq!(exhaustive_min_rankwidth(&fixtures::house(), 7).unwrap(), 2);
        assert_eq!(exhaustive_min_rankwidth(&fixtures::cycle(5), 7).unwrap(), 2);
        assert_eq!(exhaustive_min_rankwidth(&fixtures::path(2), 7).unwrap(), 1);
        assert_eq!(
            exhaustive_min_rankwidth(&fixtures::path(8), 7),
            Err(Error::SizeCapExceeded { n: 8, cap: 7 })
        );
        let c5 = fixtures::cycle(5);
        assert!(enumerate_cubic_trees(5).iter().all(|t| tree_width(&c5, t).unwrap() >= 2));
    }

    #[test]
    fn leaf_mismatch() {
        let t = enumerate_cubic_trees(4).remove(0);
        assert!(matches!(tree_width(&fixtures::path(5), &t), Err(Error::LeafMismatch(_))));
        let mut broken = t.clone();
        broken.edges.pop();
        assert!(matches!(tree_width(&fixtures::path(4), &broken), Err(Error::LeafMismatch(_))));
    }

    #[test]
    fn signed_and_random_constructions_have_width_one() {
        let opts = ConstructionOptions { sign_flips: true, ..Default::default() };
        for g in random_stable_corpus(60, 2..=9, 3, opts) {
            let t = decomposition(&g);
            assert_eq!(tree_width(&g, &t).unwrap(), 1, "{g:?}");
        }
    }

    #[test]
    fn contractible_rows_are_proportional() {
        for g in random_stable_corpus(40, 3..=8, 5, ConstructionOptions::default()) {
            for pair in find_contractible_pairs(&g) {
                assert_eq!(cut_rank(&g, &set(&[pair.u, pair.v])).unwrap(), 1);
            }
        }
    }

    proptest! {
        #[test]
        fn cut_rank_is_symmetric(seed in 0u64..500, mask in 1u32..127) {
            let g = crate::corpus::random_weighted_corpus(1, 7..=7, seed).remove(0);
            let a: BTreeSet<usize> = (0..7).filter(|&v| mask >> v & 1 == 1).collect();
            let b: BTreeSet<usize> = (0..7).filter(|v| !a.contains(v)).collect();
            prop_assert_eq!(cut_rank(&g, &a).unwrap(), cut_rank(&g, &b).unwrap());
        }
    }
}

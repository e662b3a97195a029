//! Weighted simple graphs, blocks, sign normalization and contractible pairs.

mod io;

pub use io::{format_graph, parse_graph, ParseOptions};

use crate::error::{Error, Result};
use crate::poly::{GaussianRational, Monomial, Polynomial};
use crate::rational::{one, Rational};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Simple undirected graph on vertices `0..n` with nonzero rational weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    adj: Vec<BTreeMap<usize, Rational>>,
    labels: Vec<String>,
}

impl WeightedGraph {
    /// Edgeless graph on `n` vertices labelled `1..=n`.
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            adj: vec![BTreeMap::new(); n],
            labels: (1..=n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, Rational)>) -> Result<Self> {
        let mut g = WeightedGraph::new(n);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Unit-weight graph from an edge list.
    pub fn unit(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges(n, edges.iter().map(|&(u, v)| (u, v, one())))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n(), "label count must equal vertex count");
        self.labels = labels;
        self
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: Rational) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if w.is_zero() {
            return Err(Error::ZeroWeightEdge(u.min(v), u.max(v)));
        }
        if self.adj[u].contains_key(&v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v, w.clone());
        self.adj[v].insert(u, w);
        Ok(())
    }

    pub(crate) fn set_weight(&mut self, u: usize, v: usize, w: Rational) {
        debug_assert!(!w.is_zero() && u != v);
        self.adj[u].insert(v, w.clone());
        self.adj[v].insert(u, w);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
    }

    pub(crate) fn isolate(&mut self, v: usize) {
        let nbrs: Vec<usize> = self.adj[v].keys().copied().collect();
        for u in nbrs {
            self.remove_edge(u, v);
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&Rational> {
        self.adj.get(u)?.get(&v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].keys().copied()
    }

    pub fn incident(&self, v: usize) -> &BTreeMap<usize, Rational> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v, w)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.range(u + 1..).map(move |(&v, w)| (u, v, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeMap::len).sum::<usize>() / 2
    }

    pub fn all_positive(&self) -> bool {
        self.edges().all(|(_, _, w)| w.is_positive())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::DisconnectedGraph)
        }
    }

    /// Same graph with every weight replaced by 1.
    pub fn support(&self) -> WeightedGraph {
        let mut g = WeightedGraph::new(self.n()).with_labels(self.labels.clone());
        for (u, v, _) in self.edges() {
            g.set_weight(u, v, one());
        }
        g
    }

    pub fn same_support(&self, other: &WeightedGraph) -> bool {
        self.n() == other.n()
            && self
                .adj
                .iter()
                .zip(&other.adj)
                .all(|(a, b)| a.keys().eq(b.keys()))
    }

    /// Multiplies every edge at `v` by `c`.
    pub fn scale_vertex(&self, v: usize, c: &Rational) -> WeightedGraph {
        assert!(!c.is_zero(), "scaling by zero");
        let mut g = self.clone();
        let nbrs: Vec<(usize, Rational)> = g.adj[v].iter().map(|(&u, w)| (u, w * c)).collect();
        for (u, w) in nbrs {
            g.set_weight(u, v, w);
        }
        g
    }

    /// Adds vertex `n` with the same weights as `v` and, when `bridge` is
    /// nonzero, the edge `v n` of that weight.
    pub fn copy_vertex(&self, v: usize, bridge: &Rational) -> WeightedGraph {
        let n = self.n();
        let mut labels = self.labels.clone();
        labels.push((n + 1).to_string());
        let mut g = WeightedGraph { adj: self.adj.clone(), labels };
        g.adj.push(BTreeMap::new());
        for (&t, w) in &self.adj[v] {
            g.set_weight(n, t, w.clone());
        }
        if !bridge.is_zero() {
            g.set_weight(n, v, bridge.clone());
        }
        g
    }

    /// Disjoint union of `self` and `other` with `other`'s vertex `b`
    /// identified with `a`. Returns the glued graph and the new index of
    /// each vertex of `other`.
    pub fn glue(&self, a: usize, other: &WeightedGraph, b: usize) -> (WeightedGraph, Vec<usize>) {
        let n = self.n();
        let mut map = Vec::with_capacity(other.n());
        let mut next = n;
        for v in 0..other.n() {
            if v == b {
                map.push(a);
            } else {
                map.push(next);
                next += 1;
            }
        }
        let mut g = WeightedGraph::new(next);
        for (u, v, w) in self.edges() {
            g.set_weight(u, v, w.clone());
        }
        for (u, v, w) in other.edges() {
            g.set_weight(map[u], map[v], w.clone());
        }
        (g, map)
    }

    /// Relabels vertices by `perm`: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> WeightedGraph {
        let n = self.n();
        let mut labels = vec![String::new(); n];
        for v in 0..n {
            labels[perm[v]] = self.labels[v].clone();
        }
        let mut g = WeightedGraph::new(n).with_labels(labels);
        for (u, v, w) in self.edges() {
            g.set_weight(perm[u], perm[v], w.clone());
        }
        g
    }
}

/// Biconnected components of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    /// Vertex sets of the blocks, ordered by their sorted vertex lists.
    pub blocks: Vec<BTreeSet<usize>>,
    pub articulation_vertices: BTreeSet<usize>,
    /// Incidences `(block index, articulation vertex)` of the block-cut tree.
    pub block_tree: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    /// Index of the block that contains edge `uv`.
    pub fn block_of_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&u) && b.contains(&v))
    }
}

struct Tarjan<'a> {
    g: &'a WeightedGraph,
    alive: &'a [bool],
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    edge_stack: Vec<(usize, usize)>,
    blocks: Vec<BTreeSet<usize>>,
}

impl Tarjan<'_> {
    fn dfs(&mut self, u: usize, parent: Option<usize>) {
        self.timer += 1;
        self.disc[u] = self.timer;
        self.low[u] = self.timer;
        let nbrs: Vec<usize> = self.g.neighbors(u).filter(|&v| self.alive[v]).collect();
        for v in nbrs {
            if Some(v) == parent {
                continue;
            }
            if self.disc[v] == 0 {
                self.edge_stack.push((u, v));
                self.dfs(v, Some(u));
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    let mut block = BTreeSet::new();
                    while let Some((a, b)) = self.edge_stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if self.disc[v] < self.disc[u] {
                self.edge_stack.push((u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
    }
}

/// Blocks of the subgraph induced by `alive`; `None` when it is disconnected
/// or empty.
pub(crate) fn blocks_among(g: &WeightedGraph, alive: &[bool]) -> Option<BlockDecomposition> {
    let start = alive.iter().position(|&a| a)?;
    let n = g.n();
    let mut t = Tarjan {
        g,
        alive,
        disc: vec![0; n],
        low: vec![0; n],
        timer: 0,
        edge_stack: Vec::new(),
        blocks: Vec::new(),
    };
    t.dfs(start, None);
    if (0..n).any(|v| alive[v] && t.disc[v] == 0) {
        return None;
    }
    let mut blocks = t.blocks;
    if blocks.is_empty() {
        blocks.push(BTreeSet::from([start]));
    }
    blocks.sort_by(|a, b| a.iter().cmp(b.iter()));
    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in b {
            count[v] += 1;
        }
    }
    let articulation_vertices: BTreeSet<usize> = (0..n).filter(|&v| count[v] > 1).collect();
    let block_tree = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.iter().filter(|v| articulation_vertices.contains(v)).map(move |&v| (i, v)))
        .collect();
    Some(BlockDecomposition { blocks, articulation_vertices, block_tree })
}

pub fn biconnected_components(g: &WeightedGraph) -> Result<BlockDecomposition> {
    blocks_among(g, &vec![true; g.n()]).ok_or(Error::DisconnectedGraph)
}

/// A block whose edge weights all had the same sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSign {
    pub block: BTreeSet<usize>,
    /// True when the block's weights were negative and have been negated.
    pub flipped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignNormalization {
    pub graph: WeightedGraph,
    pub flips: Vec<BlockSign>,
}

impl SignNormalization {
    /// Re-applies the recorded flips, reproducing the original graph.
    pub fn restore(&self) -> WeightedGraph {
        let mut g = self.graph.clone();
        for f in self.flips.iter().filter(|f| f.flipped) {
            flip_block(&mut g, &f.block);
        }
        g
    }
}

pub(crate) fn flip_block(g: &mut WeightedGraph, block: &BTreeSet<usize>) {
    let edges: Vec<(usize, usize, Rational)> = g
        .edges()
        .filter(|(u, v, _)| block.contains(u) && block.contains(v))
        .map(|(u, v, w)| (u, v, -w.clone()))
        .collect();
    for (u, v, w) in edges {
        g.set_weight(u, v, w);
    }
}

/// Two edges of opposite sign meeting at `center` inside one block.
///
/// Setting `x_center = 0` factors `P_{G,w}` as `P_{G-center} * L` with
/// `L = sum_t w(center, t) x_t`, and `zero_point` is an upper-half-plane zero
/// of `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedSignCertificate {
    pub center: usize,
    /// `u1` with `w(center, u1) > 0`.
    pub pos_edge: EdgeEnd,
    /// `u2` with `w(center, u2) < 0`.
    pub neg_edge: EdgeEnd,
}

/// Far endpoint and weight of an edge at a known vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub vertex: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub weight: Rational,
}

impl EdgeEnd {
    pub fn new(vertex: usize, weight: Rational) -> Self {
        EdgeEnd { vertex, weight }
    }
}

impl MixedSignCertificate {
    /// `x_{u1} = -i w(center, u2)`, `x_{u2} = i w(center, u1)`, all other
    /// coordinates 0.
    pub fn zero_point(&self, n: usize) -> Vec<GaussianRational> {
        let mut point = vec![GaussianRational::zero(); n];
        let (u1, w1) = (self.pos_edge.vertex, &self.pos_edge.weight);
        let (u2, w2) = (self.neg_edge.vertex, &self.neg_edge.weight);
        point[u1] = GaussianRational::new(Rational::zero(), -w2.clone());
        point[u2] = GaussianRational::new(Rational::zero(), w1.clone());
        point
    }

    /// `sum_{t in N(center)} w(center, t) x_t`.
    pub fn restricted_polynomial(&self, g: &WeightedGraph) -> Polynomial {
        Polynomial::from_terms(
            g.n(),
            g.incident(self.center).iter().map(|(&t, w)| (Monomial::var(t), w.clone())),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignOutcome {
    Normalized(SignNormalization),
    Mixed(MixedSignCertificate),
}

pub fn normalize_signs(g: &WeightedGraph) -> Result<SignOutcome> {
    let dec = biconnected_components(g)?;
    let mut graph = g.clone();
    let mut flips = Vec::with_capacity(dec.blocks.len());
    for block in &dec.blocks {
        let block_edges: Vec<(usize, usize, &Rational)> =
            g.edges().filter(|(u, v, _)| block.contains(u) && block.contains(v)).collect();
        let any_pos = block_edges.iter().any(|(_, _, w)| w.is_positive());
        let any_neg = block_edges.iter().any(|(_, _, w)| w.is_negative());
        if any_pos && any_neg {
            return Ok(SignOutcome::Mixed(mixed_certificate(g, block)));
        }
        if any_neg {
            flip_block(&mut graph, block);
        }
        flips.push(BlockSign { block: block.clone(), flipped: any_neg });
    }
    Ok(SignOutcome::Normalized(SignNormalization { graph, flips }))
}

fn mixed_certificate(g: &WeightedGraph, block: &BTreeSet<usize>) -> MixedSignCertificate {
    for &v in block {
        let inside = || g.incident(v).iter().filter(|(u, _)| block.contains(u));
        let pos = inside().find(|(_, w)| w.is_positive());
        let neg = inside().find(|(_, w)| w.is_negative());
        if let (Some((&u1, w1)), Some((&u2, w2))) = (pos, neg) {
            return MixedSignCertificate {
                center: v,
                pos_edge: EdgeEnd::new(u1, w1.clone()),
                neg_edge: EdgeEnd::new(u2, w2.clone()),
            };
        }
    }
    unreachable!("a block with edges of both signs has a vertex meeting both")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwinKind {
    /// `uv` is not an edge.
    Open,
    /// `uv` is an edge.
    Closed,
}

/// Vertices with equal neighbourhoods (apart from each other) whose weights
/// to every common neighbour have the same ratio.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractiblePair {
    pub u: usize,
    pub v: usize,
    /// `w(x, u) / w(x, v)` for every common neighbour `x`; 1 if there is none.
    #[serde(with = "crate::rational::serde_str")]
    pub ratio: Rational,
    pub twin_kind: TwinKind,
    /// Weight of `uv`, 0 when absent.
    #[serde(with = "crate::rational::serde_str")]
    pub uv_weight: Rational,
}

/// Contractibility test for one pair; weights must be positive.
pub fn contractible_pair(g: &WeightedGraph, u: usize, v: usize) -> Option<ContractiblePair> {
    let nu = g.incident(u);
    let nv = g.incident(v);
    let common_u = nu.iter().filter(|(&x, _)| x != v);
    let common_v = nv.iter().filter(|(&x, _)| x != u);
    if common_u.clone().map(|(x, _)| x).ne(common_v.clone().map(|(x, _)| x)) {
        return None;
    }
    let mut ratio: Option<Rational> = None;
    for ((_, wu), (_, wv)) in common_u.zip(common_v) {
        let r = wu / wv;
        match &ratio {
            None => ratio = Some(r),
            Some(prev) if *prev != r => return None,
            Some(_) => {}
        }
    }
    let ratio = ratio.unwrap_or_else(one);
    if !ratio.is_positive() {
        return None;
    }
    let uv = g.weight(u, v).cloned();
    Some(ContractiblePair {
        u,
        v,
        ratio,
        twin_kind: if uv.is_some() { TwinKind::Closed } else { TwinKind::Open },
        uv_weight: uv.unwrap_or_else(Rational::zero),
    })
}

/// Every contractible pair `u < v`, in lexicographic order.
pub fn find_contractible_pairs(g: &WeightedGraph) -> Vec<ContractiblePair> {
    let n = g.n();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter_map(|(u, v)| contractible_pair(g, u, v))
        .collect()
}

/// `G[s]` with vertices renumbered in increasing order of `s`; the second
/// component maps new indices back to the old ones.
pub fn induced_subgraph(g: &WeightedGraph, s: &BTreeSet<usize>) -> Result<(WeightedGraph, Vec<usize>)> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(&bad) = s.iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange { vertex: bad, n: g.n() });
    }
    let map: Vec<usize> = s.iter().copied().collect();
    let index: BTreeMap<usize, usize> = map.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let labels = map.iter().map(|&v| g.label(v).to_string()).collect();
    let mut sub = WeightedGraph::new(map.len()).with_labels(labels);
    for (u, v, w) in g.edges() {
        if let (Some(&a), Some(&b)) = (index.get(&u), index.get(&v)) {
            sub.set_weight(a, b, w.clone());
        }
    }
    Ok((sub, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    fn triangle(w: [i64; 3]) -> WeightedGraph {
        WeightedGraph::from_edges(3, [(0, 1, int(w[0])), (1, 2, int(w[1])), (0, 2, int(w[2]))]).unwrap()
    }

    /// Articulation points by deleting each vertex and testing connectivity.
    fn brute_articulation(g: &WeightedGraph) -> BTreeSet<usize> {
        (0..g.n())
            .filter(|&v| {
                let rest: BTreeSet<usize> = (0..g.n()).filter(|&u| u != v).collect();
                !rest.is_empty() && !induced_subgraph(g, &rest).unwrap().0.is_connected()
            })
            .collect()
    }

    #[test]
    fn construction_rejects_bad_edges() {
        let mut g = WeightedGraph::new(3);
        assert_eq!(g.add_edge(0, 0, int(1)), Err(Error::SelfLoop(0)));
        assert_eq!(g.add_edge(0, 1, int(0)), Err(Error::ZeroWeightEdge(0, 1)));
        g.add_edge(0, 1, int(2)).unwrap();
        assert_eq!(g.add_edge(1, 0, int(1)), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(g.weight(1, 0), Some(&int(2)));
        assert!(matches!(g.add_edge(0, 7, int(1)), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn blocks_of_small_graphs() {
        let path = WeightedGraph::unit(3, &[(0, 1), (1, 2)]).unwrap();
        let d = biconnected_components(&path).unwrap();
        assert_eq!(d.blocks, vec![set(&[0, 1]), set(&[1, 2])]);
        assert_eq!(d.articulation_vertices, set(&[1]));

        let d = biconnected_components(&triangle([1, 1, 1])).unwrap();
        assert_eq!(d.blocks, vec![set(&[0, 1, 2])]);
        assert!(d.articulation_vertices.is_empty());

        let bowtie = WeightedGraph::unit(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let d = biconnected_components(&bowtie).unwrap();
        assert_eq!(d.blocks, vec![set(&[0, 1, 2]), set(&[2, 3, 4])]);
        assert_eq!(d.articulation_vertices, brute_articulation(&bowtie));
        assert_eq!(d.articulation_vertices, set(&[2]));
        assert_eq!(d.block_tree, vec![(0, 2), (1, 2)]);

        let single = biconnected_components(&WeightedGraph::new(1)).unwrap();
        assert_eq!(single.blocks, vec![set(&[0])]);

        let split = WeightedGraph::unit(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(biconnected_components(&split), Err(Error::DisconnectedGraph));
    }

    #[test]
    fn sign_normalization_examples() {
        let SignOutcome::Normalized(norm) = normalize_signs(&triangle([-1, -1, -1])).unwrap() else {
            panic!("uniform block must normalize");
        };
        assert_eq!(norm.graph, triangle([1, 1, 1]));
        assert_eq!(norm.flips, vec![BlockSign { block: set(&[0, 1, 2]), flipped: true }]);
        assert_eq!(norm.restore(), triangle([-1, -1, -1]));

        let path = WeightedGraph::from_edges(3, [(0, 1, int(-2)), (1, 2, int(3))]).unwrap();
        let SignOutcome::Normalized(norm) = normalize_signs(&path).unwrap() else { panic!() };
        assert_eq!(norm.graph, WeightedGraph::from_edges(3, [(0, 1, int(2)), (1, 2, int(3))]).unwrap());
        assert_eq!(norm.flips.iter().map(|f| f.flipped).collect::<Vec<_>>(), vec![true, false]);

        let SignOutcome::Mixed(cert) = normalize_signs(&triangle([1, 1, -1])).unwrap() else {
            panic!("mixed block must be certified");
        };
        // Edge 0-2 is the negative one; vertex 0 meets 0-1 (+) and 0-2 (-).
        assert_eq!(cert.center, 0);
        assert_eq!(cert.pos_edge, EdgeEnd::new(1, int(1)));
        assert_eq!(cert.neg_edge, EdgeEnd::new(2, int(-1)));
        let point = cert.zero_point(3);
        assert!(point[1].in_upper_half_plane() && point[2].in_upper_half_plane());
        let star = cert.restricted_polynomial(&triangle([1, 1, -1]));
        assert!(star.eval_complex(&point).is_zero());
    }

    #[test]
    fn contractible_pairs_of_c4() {
        let c4 = WeightedGraph::unit(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let pairs = find_contractible_pairs(&c4);
        let uv: Vec<(usize, usize)> = pairs.iter().map(|p| (p.u, p.v)).collect();
        assert_eq!(uv, vec![(0, 2), (1, 3)]);
        assert!(pairs.iter().all(|p| p.ratio == int(1) && p.twin_kind == TwinKind::Open && p.uv_weight.is_zero()));
    }

    #[test]
    fn contractible_pairs_of_heavy_k4() {
        // K4 on 1..4 with w(12) = 2.
        let mut edges = vec![(0, 1, int(2))];
        for (u, v) in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            edges.push((u, v, int(1)));
        }
        let k4 = WeightedGraph::from_edges(4, edges).unwrap();
        let pairs = find_contractible_pairs(&k4);
        let uv: Vec<(usize, usize)> = pairs.iter().map(|p| (p.u, p.v)).collect();
        // {1,2}: ratio to 3 and 4 is 1. {3,4}: ratio to 1 is 2/2, to 2 is 1/1.
        // Mixed pairs like {1,3} see w(2,1)/w(2,3) = 2 but w(4,1)/w(4,3) = 1.
        assert_eq!(uv, vec![(0, 1), (2, 3)]);
        assert!(pairs.iter().all(|p| p.ratio == int(1) && p.twin_kind == TwinKind::Closed));
        assert_eq!(pairs[0].uv_weight, int(2));
        assert_eq!(pairs[1].uv_weight, int(1));
    }

    #[test]
    fn house_has_no_contractible_pair() {
        // C5 0-1-2-3-4 with chord 1-3; the roof is 1-2-3.
        let house = WeightedGraph::unit(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]).unwrap();
        assert!(find_contractible_pairs(&house).is_empty());
    }

    #[test]
    fn k2_endpoints_are_contractible() {
        let k2 = WeightedGraph::from_edges(2, [(0, 1, ratio(5, 2))]).unwrap();
        let pairs = find_contractible_pairs(&k2);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].ratio, int(1));
        assert_eq!(pairs[0].twin_kind, TwinKind::Closed);
        assert_eq!(pairs[0].uv_weight, ratio(5, 2));
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = WeightedGraph::from_edges(
            4,
            [(0, 1, int(2)), (0, 2, int(3)), (0, 3, int(1)), (1, 2, int(5)), (1, 3, int(1)), (2, 3, int(1))],
        )
        .unwrap();
        let (tri, map) = induced_subgraph(&k4, &set(&[0, 1, 2])).unwrap();
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(tri, WeightedGraph::from_edges(3, [(0, 1, int(2)), (0, 2, int(3)), (1, 2, int(5))]).unwrap());

        let house = WeightedGraph::unit(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]).unwrap();
        let (c4, map) = induced_subgraph(&house, &set(&[0, 1, 3, 4])).unwrap();
        assert_eq!(map, vec![0, 1, 3, 4]);
        assert_eq!(c4.edge_count(), 4);
        assert!((0..4).all(|v| c4.degree(v) == 2));

        let (same, _) = induced_subgraph(&house, &(0..5).collect()).unwrap();
        assert_eq!(same, house);
        assert_eq!(induced_subgraph(&house, &BTreeSet::new()), Err(Error::EmptySet));
    }

    fn graph_strategy(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
        (2..=max_n).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            prop::collection::vec((any::<bool>(), prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3])), pairs)
                .prop_map(move |bits| {
                    let mut g = WeightedGraph::new(n);
                    let mut k = 0;
                    for u in 0..n {
                        for v in u + 1..n {
                            if bits[k].0 {
                                g.add_edge(u, v, int(bits[k].1)).unwrap();
                            }
                            k += 1;
                        }
                    }
                    g
                })
        })
    }

    proptest! {
        #[test]
        fn blocks_match_vertex_deletion(g in graph_strategy(7)) {
            prop_assume!(g.is_connected());
            let d = biconnected_components(&g).unwrap();
            prop_assert_eq!(&d.articulation_vertices, &brute_articulation(&g));
            for (u, v, _) in g.edges() {
                let containing = d.blocks.iter().filter(|b| b.contains(&u) && b.contains(&v)).count();
                prop_assert_eq!(containing, 1);
            }
            for (i, a) in d.blocks.iter().enumerate() {
                for b in &d.blocks[i + 1..] {
                    let shared: Vec<_> = a.intersection(b).collect();
                    prop_assert!(shared.len() <= 1);
                    for s in shared {
                        prop_assert!(d.articulation_vertices.contains(s));
                    }
                }
            }
        }

        #[test]
        fn normalization_roundtrips(g in graph_strategy(7)) {
            prop_assume!(g.is_connected());
            match normalize_signs(&g).unwrap() {
                SignOutcome::Normalized(norm) => {
                    prop_assert!(norm.graph.all_positive());
                    prop_assert!(norm.graph.same_support(&g));
                    prop_assert_eq!(norm.restore(), g);
                }
                SignOutcome::Mixed(cert) => {
                    let point = cert.zero_point(g.n());
                    prop_assert!(cert.restricted_polynomial(&g).eval_complex(&point).is_zero());
                    prop_assert!(point[cert.pos_edge.vertex].in_upper_half_plane());
                    prop_assert!(point[cert.neg_edge.vertex].in_upper_half_plane());
                }
            }
        }

        #[test]
        fn contractible_pairs_survive_scaling(g in graph_strategy(6), v in 0usize..6, num in 1i64..6, den in 1i64..6) {
            let g = g.support();
            let v = v % g.n();
            let scaled = g.scale_vertex(v, &ratio(num, den));
            let before: Vec<(usize, usize)> = find_contractible_pairs(&g).iter().map(|p| (p.u, p.v)).collect();
            let after: Vec<(usize, usize)> = find_contractible_pairs(&scaled).iter().map(|p| (p.u, p.v)).collect();
            prop_assert_eq!(before, after);
            for p in find_contractible_pairs(&scaled) {
                for x in scaled.neighbors(p.u).filter(|&x| x != p.v) {
                    prop_assert_eq!(scaled.weight(x, p.u).unwrap(), &(&p.ratio * scaled.weight(x, p.v).unwrap()));
                }
            }
        }
    }
}

//! Test graphs: named fixtures, exhaustive small-graph sweeps and seeded
//! random generators.

use crate::graph::{biconnected_components, flip_block, WeightedGraph};
use crate::rational::{int, ratio, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub mod fixtures {
    use super::*;

    fn unit(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        WeightedGraph::unit(n, edges).expect("fixture edges are valid")
    }

    pub fn path(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        unit(n, &edges)
    }

    pub fn cycle(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        unit(n, &edges)
    }

    pub fn complete(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        unit(n, &edges)
    }

    /// `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> WeightedGraph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        unit(leaves + 1, &edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        unit(a + b, &edges)
    }

    /// 4-cycle 0-1-3-4 with roof 2 over the edge 1-3.
    pub fn house() -> WeightedGraph {
        unit(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)])
    }

    /// Path 1-2-3-4 plus apex 0.
    pub fn gem() -> WeightedGraph {
        unit(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)])
    }

    /// 6-cycle with the chord 0-3.
    pub fn domino() -> WeightedGraph {
        unit(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
    }

    /// Two triangles sharing vertex 2.
    pub fn two_triangles() -> WeightedGraph {
        unit(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    }

    /// 4-cycle 0-1-2-3 with weights `w01, w12, w23, w30`.
    pub fn weighted_c4(w: [Rational; 4]) -> WeightedGraph {
        let [a, b, c, d] = w;
        WeightedGraph::from_edges(4, [(0, 1, a), (1, 2, b), (2, 3, c), (3, 0, d)]).expect("positive weights")
    }

    /// `K4` with every edge weight 1 except `w(0,1) = 2`.
    pub fn k4_one_heavy() -> WeightedGraph {
        let mut edges: Vec<_> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v, int(1)))).collect();
        edges[0].2 = int(2);
        WeightedGraph::from_edges(4, edges).expect("valid")
    }

    /// `K4` with apex 3 joined by unit edges and `w(1,2) = e1`,
    /// `w(0,2) = e2`, `w(0,1) = e3`.
    pub fn k4_apex(e: [Rational; 3]) -> WeightedGraph {
        let [e1, e2, e3] = e;
        WeightedGraph::from_edges(
            4,
            [(0, 3, int(1)), (1, 3, int(1)), (2, 3, int(1)), (1, 2, e1), (0, 2, e2), (0, 1, e3)],
        )
        .expect("positive weights")
    }

    /// Every named fixture with its file stem.
    pub fn named() -> Vec<(&'static str, WeightedGraph)> {
        vec![
            ("house", house()),
            ("gem", gem()),
            ("domino", domino()),
            ("c5", cycle(5)),
            ("c6", cycle(6)),
            ("c4", cycle(4)),
            ("c4_accept", weighted_c4([int(2), int(3), int(3), int(2)])),
            ("c4_reject", weighted_c4([int(1), int(1), int(1), int(2)])),
            ("k4", complete(4)),
            ("k4_one_heavy", k4_one_heavy()),
            ("k4_distinct", k4_apex([int(1), int(2), int(3)])),
            ("k4_two_equal", k4_apex([int(1), int(1), int(2)])),
            ("two_triangles", two_triangles()),
            ("star3", star(3)),
            ("path5", path(5)),
            ("k23", complete_bipartite(2, 3)),
            ("mixed_triangle", mixed_triangle()),
            ("mixed_k4", mixed_k4()),
            ("mixed_bowtie", mixed_bowtie()),
            ("signed_dumbbell", signed_dumbbell()),
        ]
    }

    /// Triangle with one negative edge: a single block with mixed signs.
    pub fn mixed_triangle() -> WeightedGraph {
        WeightedGraph::from_edges(3, [(0, 1, int(1)), (1, 2, int(2)), (0, 2, int(-1))]).expect("valid")
    }

    /// Unit `K4` with the edge 2-3 negated.
    pub fn mixed_k4() -> WeightedGraph {
        let mut g = complete(4);
        g.set_weight(2, 3, int(-1));
        g
    }

    /// Two triangles sharing a vertex; the first is negative, the second
    /// mixed.
    pub fn mixed_bowtie() -> WeightedGraph {
        WeightedGraph::from_edges(
            5,
            [(0, 1, int(-1)), (1, 2, int(-1)), (0, 2, int(-3)), (2, 3, int(1)), (3, 4, int(-2)), (2, 4, int(1))],
        )
        .expect("valid")
    }

    /// Two negative triangles joined through a positive bridge edge.
    pub fn signed_dumbbell() -> WeightedGraph {
        WeightedGraph::from_edges(
            6,
            [
                (0, 1, int(-1)),
                (1, 2, int(-2)),
                (0, 2, int(-1)),
                (2, 3, ratio(3, 2)),
                (3, 4, int(-1)),
                (4, 5, int(-1)),
                (3, 5, int(-1)),
            ],
        )
        .expect("valid")
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Positive rational `k/d` with `1 <= k <= 6`, `1 <= d <= 3`.
pub fn random_weight(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(1..=6), rng.gen_range(1..=3))
}

#[derive(Debug, Clone, Copy)]
pub struct ConstructionOptions {
    /// Probability that a copy also adds the bridge edge.
    pub bridge_prob: f64,
    /// Probability of choosing a pendant gluing over a copy.
    pub pendant_prob: f64,
    /// Number of random vertex scalings applied at the end.
    pub scalings: usize,
    /// Negate each block independently with probability one half.
    pub sign_flips: bool,
}

impl Default for ConstructionOptions {
    fn default() -> Self {
        ConstructionOptions { bridge_prob: 0.5, pendant_prob: 0.3, scalings: 2, sign_flips: false }
    }
}

/// A weighted stable graph on `n` vertices grown from one vertex by copies,
/// pendant gluings and scalings, with vertices shuffled at the end.
pub fn random_stable(n: usize, rng: &mut impl Rng, opts: ConstructionOptions) -> WeightedGraph {
    assert!(n >= 1);
    let mut g = WeightedGraph::new(n);
    for new in 1..n {
        let v = rng.gen_range(0..new);
        let pendant = g.degree(v) == 0 && new == 1 || rng.gen_bool(opts.pendant_prob);
        if pendant {
            g.set_weight(new, v, random_weight(rng));
            continue;
        }
        let copies: Vec<(usize, Rational)> = g.incident(v).iter().map(|(&t, w)| (t, w.clone())).collect();
        for (t, w) in copies {
            g.set_weight(new, t, w);
        }
        if g.degree(new) == 0 || rng.gen_bool(opts.bridge_prob) {
            g.set_weight(new, v, random_weight(rng));
        }
    }
    for _ in 0..opts.scalings {
        let v = rng.gen_range(0..n);
        g = g.scale_vertex(v, &random_weight(rng));
    }
    if opts.sign_flips && n >= 2 {
        let blocks = biconnected_components(&g).expect("connected").blocks;
        for b in &blocks {
            if rng.gen_bool(0.5) {
                flip_block(&mut g, b);
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let labels = WeightedGraph::new(n).labels().to_vec();
    g.permute(&perm).with_labels(labels)
}

/// `count` random stable graphs with sizes in `sizes`, from one seed.
pub fn random_stable_corpus(
    count: usize,
    sizes: std::ops::RangeInclusive<usize>,
    seed: u64,
    opts: ConstructionOptions,
) -> Vec<WeightedGraph> {
    (0..count)
        .map(|i| {
            let mut rng = rng_for(seed, i as u64);
            let n = rng.gen_range(sizes.clone());
            random_stable(n, &mut rng, opts)
        })
        .collect()
}

/// A random connected support on `n` vertices with random positive weights.
pub fn random_weighted(n: usize, edge_prob: f64, rng: &mut impl Rng) -> WeightedGraph {
    loop {
        let mut g = WeightedGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(edge_prob) {
                    g.set_weight(u, v, random_weight(rng));
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

pub fn random_weighted_corpus(count: usize, sizes: std::ops::RangeInclusive<usize>, seed: u64) -> Vec<WeightedGraph> {
    (0..count)
        .map(|i| {
            let mut rng = rng_for(seed ^ 0x5eed, i as u64);
            let n = rng.gen_range(sizes.clone());
            random_weighted(n, 0.6, &mut rng)
        })
        .collect()
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Every connected labelled unit-weight graph on `n` vertices, in order of
/// edge bitmask.
pub fn all_connected_labeled(n: usize) -> impl Iterator<Item = WeightedGraph> {
    let pairs = pair_index(n);
    let total: u64 = 1 << pairs.len();
    (0..total).filter_map(move |mask| {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = WeightedGraph::unit(n, &edges).expect("valid");
        g.is_connected().then_some(g)
    })
}

type Adjacency = Vec<u32>;

fn adjacency(g: &WeightedGraph) -> Adjacency {
    (0..g.n()).map(|v| g.neighbors(v).fold(0u32, |m, u| m | 1 << u)).collect()
}

fn from_adjacency(adj: &Adjacency) -> WeightedGraph {
    let n = adj.len();
    let edges: Vec<_> = pair_index(n).into_iter().filter(|&(u, v)| adj[u] >> v & 1 == 1).collect();
    WeightedGraph::unit(n, &edges).expect("valid")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Lexicographically least upper-triangle bit string over all relabellings.
fn canonical_code(adj: &Adjacency, perms: &[Vec<usize>]) -> u64 {
    let pairs = pair_index(adj.len());
    perms
        .iter()
        .map(|p| {
            pairs.iter().fold(0u64, |code, &(u, v)| code << 1 | u64::from(adj[p[u]] >> p[v] & 1))
        })
        .max()
        .unwrap_or(0)
}

fn extend(adj: &Adjacency, neighbours: u32) -> Adjacency {
    let n = adj.len();
    let mut out = adj.clone();
    for (v, row) in out.iter_mut().enumerate() {
        if neighbours >> v & 1 == 1 {
            *row |= 1 << n;
        }
    }
    out.push(neighbours);
    out
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices (1, 1, 2, 6, 21, 112 for n = 1..6).
pub fn connected_classes(n: usize) -> Vec<WeightedGraph> {
    assert!((1..=7).contains(&n), "isomorphism sweep supports 1 <= n <= 7");
    let mut classes: Vec<Adjacency> = vec![vec![0]];
    for m in 2..=n {
        let perms = permutations(m);
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for adj in &classes {
            for nb in 1..(1u32 << (m - 1)) {
                let ext = extend(adj, nb);
                if seen.insert(canonical_code(&ext, &perms)) {
                    next.push(ext);
                }
            }
        }
        classes = next;
    }
    classes.iter().map(from_adjacency).collect()
}

/// Every connected class on `n - 1` vertices extended by one new vertex in
/// every possible way: each connected graph on `n` vertices appears at least
/// once up to isomorphism, without the cost of deduplication.
pub fn connected_cover(n: usize) -> Vec<WeightedGraph> {
    assert!(n >= 2);
    let base = connected_classes(n - 1);
    base.iter()
        .flat_map(|g| {
            let adj = adjacency(g);
            (1..(1u32 << (n - 1))).map(move |nb| from_adjacency(&extend(&adj, nb)))
        })
        .collect()
}

/// Unit-weight trees: all labelled trees on `n` vertices via Prüfer codes.
pub fn all_labeled_trees(n: usize) -> Vec<WeightedGraph> {
    if n <= 2 {
        return vec![fixtures::path(n)];
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let seq: Vec<usize> = (0..len)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect();
            let mut degree = vec![1usize; n];
            for &s in &seq {
                degree[s] += 1;
            }
            let mut edges = Vec::with_capacity(n - 1);
            for &s in &seq {
                let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
                edges.push((leaf, s));
                degree[leaf] -= 1;
                degree[s] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
            edges.push((rest[0], rest[1]));
            WeightedGraph::unit(n, &edges).expect("valid tree")
        })
        .collect()
}

/// True when the unit-weight support has no induced path on four vertices.
pub fn is_cograph(g: &WeightedGraph) -> bool {
    let n = g.n();
    let adj = adjacency(g);
    let e = |a: usize, b: usize| adj[a] >> b & 1 == 1;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                    if distinct && e(a, b) && e(b, c) && e(c, d) && !e(a, c) && !e(b, d) && !e(a, d) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_classes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn labeled_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| all_connected_labeled(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
        assert_eq!(all_labeled_trees(5).len(), 125);
        assert!(all_labeled_trees(5).iter().all(|t| t.is_connected() && t.edge_count() == 4));
    }

    #[test]
    fn random_stable_graphs_are_connected_and_seeded() {
        let a = random_stable_corpus(20, 1..=8, 7, ConstructionOptions::default());
        let b = random_stable_corpus(20, 1..=8, 7, ConstructionOptions::default());
        assert_eq!(a, b);
        assert!(a.iter().all(|g| g.is_connected() && g.all_positive()));
    }

    #[test]
    fn cograph_test() {
        assert!(is_cograph(&fixtures::complete_bipartite(2, 3)));
        assert!(is_cograph(&fixtures::cycle(4)));
        assert!(!is_cograph(&fixtures::path(4)));
    }
}

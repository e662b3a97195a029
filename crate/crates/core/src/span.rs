//! Spanning-tree enumerators: the vertex polynomial `P_{G,w}`, the edge
//! polynomial `Q_G`, and a symbolic matrix-tree cross-check.
//!
//! Trees are enumerated by edge inclusion/exclusion with two prunings: an
//! edge is included only if it joins two components, and excluded only if the
//! chosen plus undecided edges still connect the graph. Every leaf of the
//! search is a spanning tree, so the cost is `O(#trees * m * alpha)`, fine for
//! graphs up to roughly ten vertices.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::poly::{Monomial, Polynomial};
use crate::rational::{int, one, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    /// Edges `(u, v)` with `u < v`, in the graph's edge order.
    pub edges: Vec<(usize, usize)>,
    pub degrees: Vec<usize>,
}

#[derive(Clone)]
struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

struct Search<'a, F> {
    n: usize,
    edges: &'a [(usize, usize)],
    chosen: Vec<usize>,
    visit: F,
}

impl<F: FnMut(&[usize])> Search<'_, F> {
    fn run(&mut self, i: usize, dsu: Dsu) {
        if self.chosen.len() == self.n - 1 {
            (self.visit)(&self.chosen);
            return;
        }
        if self.edges.len() - i < self.n - 1 - self.chosen.len() {
            return;
        }
        let (u, v) = self.edges[i];
        let mut with = dsu.clone();
        if with.union(u, v) {
            self.chosen.push(i);
            self.run(i + 1, with);
            self.chosen.pop();
        }
        if self.connected_without(i, &dsu) {
            self.run(i + 1, dsu);
        }
    }

    fn connected_without(&self, i: usize, dsu: &Dsu) -> bool {
        let mut d = dsu.clone();
        let mut comps = (0..self.n).filter(|&x| d.find(x) == x).count();
        for &(a, b) in &self.edges[i + 1..] {
            if d.union(a, b) {
                comps -= 1;
                if comps == 1 {
                    return true;
                }
            }
        }
        comps == 1
    }
}

/// Calls `visit` once per spanning tree with the indices (into
/// `g.edges()` order) of its edges.
pub fn for_each_spanning_tree(g: &WeightedGraph, visit: impl FnMut(&[usize])) -> Result<()> {
    g.require_connected()?;
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    let mut search = Search { n: g.n(), edges: &edges, chosen: Vec::new(), visit };
    search.run(0, Dsu::new(g.n()));
    Ok(())
}

pub fn enumerate_spanning_trees(g: &WeightedGraph) -> Result<Vec<SpanningTree>> {
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    let mut out = Vec::new();
    for_each_spanning_tree(g, |idx| {
        let mut degrees = vec![0; g.n()];
        let tree_edges: Vec<(usize, usize)> = idx
            .iter()
            .map(|&i| {
                let (u, v) = edges[i];
                degrees[u] += 1;
                degrees[v] += 1;
                (u, v)
            })
            .collect();
        out.push(SpanningTree { edges: tree_edges, degrees });
    })?;
    Ok(out)
}

/// `P_{G,w} = sum_T prod_{e in T} w(e) prod_v x_v^(deg_T(v) - 1)`, with the
/// single-vertex graph giving the constant 1.
pub fn vertex_span_poly(g: &WeightedGraph) -> Result<Polynomial> {
    let n = g.n();
    if n == 1 {
        return Ok(Polynomial::one(1));
    }
    let edges: Vec<(usize, usize, Rational)> = g.edges().map(|(u, v, w)| (u, v, w.clone())).collect();
    let mut p = Polynomial::zero(n);
    let mut degrees = vec![0u32; n];
    for_each_spanning_tree(g, |idx| {
        degrees.iter_mut().for_each(|d| *d = 0);
        let mut coef = one();
        for &i in idx {
            let (u, v, ref w) = edges[i];
            degrees[u] += 1;
            degrees[v] += 1;
            coef *= w;
        }
        let m = Monomial::from_pairs(degrees.iter().enumerate().map(|(v, &d)| (v, d - 1)));
        p.add_term(m, coef);
    })?;
    Ok(p)
}

/// `Q_G = sum_T prod_{j in T} y_j`, one variable per edge in `g.edges()`
/// order; weights are ignored.
pub fn edge_span_poly(g: &WeightedGraph) -> Result<Polynomial> {
    let mut q = Polynomial::zero(g.edge_count());
    for_each_spanning_tree(g, |idx| {
        q.add_term(Monomial::from_pairs(idx.iter().map(|&i| (i, 1))), one());
    })?;
    Ok(q)
}

/// Fraction-free (Bareiss) determinant over the polynomial ring. Every
/// division is exact by Sylvester's identity.
pub fn bareiss_determinant(mut m: Vec<Vec<Polynomial>>, nvars: usize) -> Polynomial {
    let size = m.len();
    if size == 0 {
        return Polynomial::one(nvars);
    }
    let mut negate = false;
    let mut prev = Polynomial::one(nvars);
    for k in 0..size {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Polynomial::zero(nvars),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss step must divide exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Cofactor of the symbolic Laplacian with off-diagonal entries
/// `-w(uv) x_u x_v` (row and column 0 deleted).
pub fn laplacian_cofactor(g: &WeightedGraph) -> Result<Polynomial> {
    g.require_connected()?;
    let n = g.n();
    let entry = |u: usize, v: usize, w: &Rational| Polynomial::from_terms(n, [(Monomial::from_pairs([(u, 1), (v, 1)]), w.clone())]);
    let mut lap = vec![vec![Polynomial::zero(n); n]; n];
    for (u, v, w) in g.edges() {
        let e = entry(u, v, w);
        lap[u][u] = &lap[u][u] + &e;
        lap[v][v] = &lap[v][v] + &e;
        lap[u][v] = -&e;
        lap[v][u] = -&e;
    }
    let reduced: Vec<Vec<Polynomial>> = lap.into_iter().skip(1).map(|row| row.into_iter().skip(1).collect()).collect();
    Ok(bareiss_determinant(reduced, n))
}

/// Weighted matrix-tree identity: cofactor `= P_{G,w} * prod_v x_v`.
pub fn matrix_tree_check(g: &WeightedGraph) -> Result<bool> {
    g.require_connected()?;
    if g.n() < 2 {
        return Err(Error::InvalidSubset("matrix-tree check needs at least two vertices".into()));
    }
    let cofactor = laplacian_cofactor(g)?;
    let all_vars = Monomial::from_pairs((0..g.n()).map(|v| (v, 1)));
    let expected = vertex_span_poly(g)?.mul_monomial(&all_vars, &one());
    Ok(cofactor == expected)
}

/// Number of spanning trees from the unweighted reduced Laplacian.
pub fn kirchhoff_count(g: &WeightedGraph) -> BigInt {
    let n = g.n();
    if n <= 1 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<Rational>> = (1..n)
        .map(|u| {
            (1..n)
                .map(|v| if u == v { int(g.degree(u) as i64) } else if g.has_edge(u, v) { int(-1) } else { int(0) })
                .collect()
        })
        .collect();
    let size = n - 1;
    let mut det = one();
    for k in 0..size {
        let Some(p) = (k..size).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for i in k + 1..size {
            let f = &a[i][k] / &pivot;
            if f.is_zero() {
                continue;
            }
            let (top, bottom) = a.split_at_mut(i);
            for (x, y) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *x -= &f * y;
            }
        }
    }
    det.to_integer()
}

//! Cross-module invariant suite over a generated corpus.

use crate::corpus::{self, fixtures, ConstructionOptions};
use crate::factor::{factor_from_trace, verify_factorization};
use crate::graph::{find_contractible_pairs, induced_subgraph, normalize_signs, SignOutcome, WeightedGraph};
use crate::poly::{LinearForm, Polynomial};
use crate::probe::{falsify, k4_discriminant, k4_witness_point, mixed_sign_certificate, verify_certificate, verify_witness, FalsifyOutcome};
use crate::rankdec::{build_rank_decomposition, cut_rank, exhaustive_min_rankwidth, tree_width};
use crate::rational::{int, one, Rational};
use crate::recognize::{is_distance_hereditary_oracle, recognize, replay_trace, DhVerdict, ObstructionKind, Recognition};
use crate::span::{matrix_tree_check, vertex_span_poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone)]
pub struct SelfCheckConfig {
    pub max_n: usize,
    pub seed: u64,
    /// Size of each random family.
    pub random_graphs: usize,
    /// Trials per accepted graph when probing for false certificates.
    pub probe_trials: u64,
    /// Trials allowed for each forbidden fixture.
    pub forbidden_trials: u64,
}

impl Default for SelfCheckConfig {
    fn default() -> Self {
        SelfCheckConfig { max_n: 6, seed: 0, random_graphs: 100, probe_trials: 200, forbidden_trials: 10_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

impl std::error::Error for Violation {}

/// The graphs every check draws from.
pub struct Corpus {
    /// Every connected labelled unit graph up to `min(max_n, 6)` vertices,
    /// plus a cover of the 7-vertex classes when `max_n >= 7`.
    pub unit: Vec<WeightedGraph>,
    /// One unit graph per isomorphism class up to `min(max_n, 6)`.
    pub classes: Vec<WeightedGraph>,
    /// Random constructions, some with negated blocks, named fixtures, and
    /// random weighted graphs.
    pub weighted: Vec<WeightedGraph>,
}

impl Corpus {
    pub fn generate(cfg: &SelfCheckConfig) -> Corpus {
        let small = cfg.max_n.min(6);
        let mut unit: Vec<WeightedGraph> = (1..=small).flat_map(corpus::all_connected_labeled).collect();
        if cfg.max_n >= 7 {
            unit.extend(corpus::connected_cover(7));
        }
        let classes = (1..=small).flat_map(corpus::connected_classes).collect();
        let top = cfg.max_n.max(3);
        let mut weighted = corpus::random_stable_corpus(cfg.random_graphs, 1..=top, cfg.seed, ConstructionOptions::default());
        let signed = ConstructionOptions { sign_flips: true, ..Default::default() };
        weighted.extend(corpus::random_stable_corpus(cfg.random_graphs / 2, 2..=top, cfg.seed.wrapping_add(1), signed));
        weighted.extend(fixtures::named().into_iter().map(|(_, g)| g).filter(|g| g.n() <= top.max(6)));
        weighted.extend(corpus::random_weighted_corpus(cfg.random_graphs, 3..=top, cfg.seed));
        Corpus { unit, classes, weighted }
    }

    fn all(&self) -> impl Iterator<Item = &WeightedGraph> {
        self.classes.iter().chain(&self.weighted)
    }
}

type Check = fn(&Corpus, &SelfCheckConfig) -> Result<usize, String>;

const CHECKS: &[(&str, Check)] = &[
    ("unit-weight recognition agrees with the forbidden-subgraph oracle", check_oracle_agreement),
    ("accepted traces replay to the input", check_replay),
    ("supports of accepted graphs are accepted", check_support_law),
    ("deleting one vertex of a contractible pair keeps acceptance", check_deletion_closure),
    ("vertex scaling does not change the verdict", check_scaling_invariance),
    ("sign flips round-trip and mixed-sign certificates vanish", check_signs),
    ("linear factorizations expand to the tree sum", check_factorization),
    ("copy, gluing and scaling identities hold", check_identities),
    ("symbolic cofactor equals the tree sum times all variables", check_matrix_tree),
    ("cut-rank is symmetric and contractible rows are proportional", check_cut_rank),
    ("positive weights: accepted iff rank-width one; trace decompositions have width one", check_rank_width),
    ("K4 discriminant witness", check_k4),
    ("falsify certifies forbidden graphs and spares accepted ones", check_probe),
];

/// Runs every check in order, reporting each one that passes, and stops at
/// the first violation.
pub fn run_self_check(cfg: &SelfCheckConfig, mut on_pass: impl FnMut(&CheckOutcome)) -> Result<Vec<CheckOutcome>, Violation> {
    let corpus = Corpus::generate(cfg);
    let mut done = Vec::new();
    for &(name, check) in CHECKS {
        let cases = check(&corpus, cfg).map_err(|detail| Violation { check: name, detail })?;
        let outcome = CheckOutcome { name: name.to_string(), cases };
        on_pass(&outcome);
        done.push(outcome);
    }
    Ok(done)
}

fn show(g: &WeightedGraph) -> String {
    crate::graph::format_graph(g).replace('\n', "; ")
}

fn accepted(g: &WeightedGraph) -> Result<Option<crate::recognize::ReductionTrace>, String> {
    match recognize(g).map_err(|e| format!("{e} on {}", show(g)))? {
        Recognition::Accept(t) => Ok(Some(t)),
        Recognition::Reject(_) => Ok(None),
    }
}

fn check_oracle_agreement(c: &Corpus, _: &SelfCheckConfig) -> Result<usize, String> {
    for g in &c.unit {
        let dh = matches!(is_distance_hereditary_oracle(g, 10).map_err(|e| e.to_string())?, DhVerdict::DistanceHereditary);
        if accepted(g)?.is_some() != dh {
            return Err(format!("recognize and oracle disagree (oracle says {dh}) on {}", show(g)));
        }
    }
    Ok(c.unit.len())
}

fn check_replay(c: &Corpus, _: &SelfCheckConfig) -> Result<usize, String> {
    let mut n = 0;
    for g in c.all() {
        if let Some(t) = accepted(g)? {
            let back = replay_trace(&t).map_err(|e| e.to_string())?;
            if &back != g || !t.is_weight_preserving() {
                return Err(format!("replay differs for {}", show(g)));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn check_support_law(c: &Corpus, _: &SelfCheckConfig) -> Result<usize, String> {
    let mut n = 0;
    for g in c.all().filter(|g| g.all_positive()) {
        if accepted(g)?.is_some() {
            if accepted(&g.support())?.is_none() {
                return Err(format!("support rejected for {}", show(g)));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn check_deletion_closure(c: &Corpus, _: &SelfCheckConfig) -> Result<usize, String> {
    let mut n = 0;
    for g in c.all().filter(|g| g.n() >= 3 && g.all_positive()) {
        if accepted(g)?.is_none() {
            continue;
        }
        for pair in find_contractible_pairs(g) {
            let keep: BTreeSet<usize> = (0..g.n()).filter(|&v| v != pair.v).collect();
            let (sub, _) = induced_subgraph(g, &keep).map_err(|e| e.to_string())?;
            if accepted(&sub)?.is_none() {
                return Err(format!("deleting {} rejects {}", pair.v, show(g)));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn check_scaling_invariance(c: &Corpus, cfg: &SelfCheckConfig) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut n = 0;
    for g in c.all() {
        let v = rng.gen_range(0..g.n());
        let scaled = g.scale_vertex(v, &corpus::random_weight(&mut rng));
        if accepted(g)?.is_some() != accepted(&scaled)?.is_some() {
            return Err(format!("scaling vertex {v} changes the verdict on {}", show(g)));
        }
        n += 1;
    }
    Ok(n)
}

fn check_signs(c: &Corpus, cfg: &SelfCheckConfig) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut n = 0;
    for g in c.all().filter(|g| g.edge_count() > 0) {
        // Negate one random edge so that blocks with several edges become
        // mixed.
        let edges: Vec<(usize, usize, Rational)> = g.edges().map(|(u, v, w)| (u, v, w.clone())).collect();
        let (u, v, w) = &edges[rng.gen_range(0..edges.len())];
        let mut h = g.clone();
        h.set_weight(*u, *v, -w.clone());
        for graph in [g, &h] {
            match normalize_signs(graph).map_err(|e| e.to_string())? {
                SignOutcome::Normalized(norm) => {
                    if &norm.restore() != graph || !norm.graph.all_positive() {
                        return Err(format!("sign normalization does not round-trip on {}", show(graph)));
                    }
                }
                SignOutcome::Mixed(cert) => {
                    let star = cert.restricted_polynomial(graph);
                    let zc = mixed_sign_certificate(&cert, graph.n());
                    if verify_certificate(&star, &zc) != Ok(true) {
                        return Err(format!("mixed-sign certificate fails on {}", show(graph)));
                    }
                    let Recognition::Reject(obs) = recognize(graph).map_err(|e| e.to_string())? else {
                        return Err(format!("mixed-sign graph accepted: {}", show(graph)));
                    };
                    if !matches!(obs.kind, ObstructionKind::MixedSign { .. }) {
                        return Err(format!("mixed-sign graph rejected without certificate: {}", show(graph)));
                    }
                }
            }
            n += 1;
        }
    }
    Ok(n)
}

fn check_factorization(c: &Corpus, _: &SelfCheckConfig) -> Result<usize, String> {
    let mut n = 0;
    for g in c.all() {
        let Some(t) = accepted(g)? else { continue };
        let f = factor_from_trace(&t).map_err(|e| e.to_string())?;
        if f.factors.len() != g.n().saturating_sub(2) || !f.all_nonnegative() || !verify_factorization(g, &f) {
            return Err(format!("bad factorization for {}", show(g)));
        }
        n += 1;
    }
    Ok(n)
}

/// `P` of `g` with vertex `v` copied (bridge `p`) equals the substituted `P`
/// times the new star factor.
pub fn copy_identity_holds(g: &WeightedGraph, v: usize, p: &Rational) -> bool {
    let n = g.n();
    let copied = g.copy_vertex(v, p);
    let lhs = vertex_span_poly(&copied).expect("connected");
    let base = vertex_span_poly(g).expect("connected").with_nvars(n + 1);
    let split = base.substitute_linear(v, &LinearForm::from_pairs([(v, one()), (n, one())]));
    let mut star = LinearForm::from_pairs(g.incident(v).iter().map(|(&t, w)| (t, w.clone())));
    star.add(v, p);
    star.add(n, p);
    lhs == &split * &star.to_polynomial(n + 1)
}

/// `P` of `a` and `b` glued at one vertex equals `P_a * P_b * x_v`.
pub fn gluing_identity_holds(a: &WeightedGraph, va: usize, b: &WeightedGraph, vb: usize) -> bool {
    let (g, map) = a.glue(va, b, vb);
    let n = g.n();
    let pa = vertex_span_poly(a).expect("connected").with_nvars(n);
    let pb = vertex_span_poly(b).expect("connected").rename_vars(&map, n);
    vertex_span_poly(&g).expect("connected") == &(&pa * &pb) * &Polynomial::var(n, va)
}

/// Scaling the edges at `v` by `c` gives `c * P(x_v -> c x_v)`.
pub fn scaling_identity_holds(g: &WeightedGraph, v: usize, c: &Rational) -> bool {
    let p = vertex_span_poly(g).expect("connected");
    let rhs = p.substitute_linear(v, &LinearForm::from_pairs([(v, c.clone())])).scale(c);
    vertex_span_poly(&g.scale_vertex(v, c)).expect("connected") == rhs
}

fn check_identities(c: &Corpus, cfg: &SelfCheckConfig) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pool: Vec<&WeightedGraph> = c.weighted.iter().filter(|g| g.n() >= 2 && g.n() <= 6).collect();
    let mut n = 0;
    for (i, g) in pool.iter().enumerate() {
        let v = rng.gen_range(0..g.n());
        let p = if rng.gen_bool(0.5) { Rational::zero() } else { corpus::random_weight(&mut rng) };
        if !copy_identity_holds(g, v, &p) {
            return Err(format!("copy identity fails at vertex {v}, bridge {p} on {}", show(g)));
        }
        let other = pool[(i * 7 + 3) % pool.len()];
        let vb = rng.gen_range(0..other.n());
        if g.n() + other.n() <= 9 && !gluing_identity_holds(g, v, other, vb) {
            return Err(format!("gluing identity fails on {} and {}", show(g), show(other)));
        }
        let c = corpus::random_weight(&mut rng);
        if !scaling_identity_holds(g, v, &c) {
            return Err(format!("scaling identity fails at vertex {v} by {c} on {}", show(g)));
        }
        n += 1;
    }
    Ok(n)
}

fn check_matrix_tree(c: &Corpus, _: &SelfCheckConfig) -> Result<usize, String> {
    let mut n = 0;
    for g in c.all().filter(|g| (2..=7).contains(&g.n())) {
        if !matrix_tree_check(g).map_err(|e| e.to_string())? {
            return Err(format!("cofactor mismatch on {}", show(g)));
        }
        n += 1;
    }
    Ok(n)
}

fn check_cut_rank(c: &Corpus, _: &SelfCheckConfig) -> Result<usize, String> {
    let mut n = 0;
    for g in c.all().filter(|g| (2..=7).contains(&g.n())) {
        let full = (1u32 << g.n()) - 1;
        for mask in 1..full {
            let a: BTreeSet<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
            let b: BTreeSet<usize> = (0..g.n()).filter(|v| !a.contains(v)).collect();
            if cut_rank(g, &a) != cut_rank(g, &b) {
                return Err(format!("cut-rank asymmetric on {a:?} in {}", show(g)));
            }
        }
        if g.all_positive() {
            for pair in find_contractible_pairs(g).into_iter().filter(|_| g.n() >= 3) {
                if cut_rank(g, &BTreeSet::from([pair.u, pair.v])) != Ok(1) {
                    return Err(format!("pair {}-{} rows not proportional in {}", pair.u, pair.v, show(g)));
                }
            }
        }
        n += 1;
    }
    Ok(n)
}

fn check_rank_width(c: &Corpus, _: &SelfCheckConfig) -> Result<usize, String> {
    let mut n = 0;
    for g in c.all().filter(|g| (2..=6).contains(&g.n())) {
        let trace = accepted(g)?;
        // With mixed signs every graph on three vertices has width one.
        let width = exhaustive_min_rankwidth(g, 7).map_err(|e| e.to_string())?;
        if g.all_positive() && trace.is_some() != (width == 1) {
            return Err(format!("minimum rank-width {width} disagrees with recognition on {}", show(g)));
        }
        if let Some(t) = trace {
            let tree = build_rank_decomposition(&t).map_err(|e| e.to_string())?;
            if tree_width(g, &tree) != Ok(1) {
                return Err(format!("trace decomposition is not width one on {}", show(g)));
            }
        }
        n += 1;
    }
    Ok(n)
}

fn check_k4(_: &Corpus, _: &SelfCheckConfig) -> Result<usize, String> {
    let e = [int(1), int(2), int(3)];
    let d = k4_discriminant(&e[0], &e[1], &e[2]).map_err(|e| e.to_string())?;
    let x = k4_witness_point([&e[0], &e[1], &e[2]]).ok_or("no witness point")?;
    if d.eval_rational(&x) != int(-3) {
        return Err("discriminant at the witness point is not -3".into());
    }
    if accepted(&fixtures::k4_apex(e))?.is_some() {
        return Err("K4 with distinct weights accepted".into());
    }
    Ok(1)
}

fn check_probe(c: &Corpus, cfg: &SelfCheckConfig) -> Result<usize, String> {
    let mut n = 0;
    for g in [fixtures::cycle(5), fixtures::house(), fixtures::gem(), fixtures::domino()] {
        let p = vertex_span_poly(&g).map_err(|e| e.to_string())?;
        match falsify(&p, cfg.forbidden_trials, cfg.seed).map_err(|e| e.to_string())? {
            FalsifyOutcome::Certificate { certificate, .. } if verify_certificate(&p, &certificate) == Ok(true) => {}
            other => return Err(format!("no verified certificate for {}: {other:?}", show(&g))),
        }
        n += 1;
    }
    let accepted_pool: Vec<&WeightedGraph> = c.all().filter(|g| (2..=6).contains(&g.n())).collect();
    for g in accepted_pool.iter().step_by((accepted_pool.len() / 40).max(1)) {
        let p = vertex_span_poly(g).map_err(|e| e.to_string())?;
        let outcome = falsify(&p, cfg.probe_trials, cfg.seed).map_err(|e| e.to_string())?;
        let stable = accepted(g)?.is_some();
        match &outcome {
            FalsifyOutcome::Certificate { certificate, .. } => {
                if stable || verify_certificate(&p, certificate) != Ok(true) {
                    return Err(format!("certificate on accepted or unverifiable for {}", show(g)));
                }
            }
            FalsifyOutcome::RealRootednessViolation { witness, .. } => {
                if stable || !verify_witness(&p, witness) {
                    return Err(format!("rootedness violation on accepted or unverifiable for {}", show(g)));
                }
            }
            FalsifyOutcome::NotFound { .. } => {}
        }
        n += 1;
    }
    Ok(n)
}

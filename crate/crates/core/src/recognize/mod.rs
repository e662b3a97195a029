//! Recognition of weighted stable graphs by greedy reduction.
//!
//! After sign normalization the reducer repeatedly removes the least pendant
//! vertex, or else the larger member of the least contractible pair whose
//! members are both non-articulation vertices. A graph reduces to a single
//! vertex exactly when it is weighted stable, and the recorded steps read
//! backwards are a construction from one vertex by weight-preserving copies,
//! pendant gluings and vertex scalings.

mod oracle;
pub(crate) mod replay;

pub use oracle::{is_distance_hereditary_oracle, DhVerdict, ForbiddenKind, ForbiddenSubgraph, DEFAULT_ORACLE_CAP};
pub use replay::replay_trace;

use crate::error::Result;
use crate::graph::{blocks_among, contractible_pair, induced_subgraph, normalize_signs, MixedSignCertificate, SignOutcome, WeightedGraph};
use crate::rational::{one, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

pub const TRACE_VERSION: u32 = 1;

/// One reduction step, in the direction it was applied to the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TraceStep {
    /// Negate every edge inside the block.
    SignFlipBlock { block: Vec<usize> },
    /// Multiply every edge at `vertex` by `factor > 0`.
    ScaleVertex {
        vertex: usize,
        #[serde(with = "crate::rational::serde_str")]
        factor: Rational,
    },
    /// Delete the degree-one `vertex`, hanging from `attach` with `weight`.
    RemovePendant {
        vertex: usize,
        attach: usize,
        #[serde(with = "crate::rational::serde_str")]
        weight: Rational,
    },
    /// Delete `removed`, whose weights are `ratio` times those of `kept`;
    /// `bridge` is the weight of the edge between them (0 when absent).
    RemoveTwin {
        removed: usize,
        kept: usize,
        #[serde(with = "crate::rational::serde_str")]
        ratio: Rational,
        #[serde(with = "crate::rational::serde_str")]
        bridge: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub version: u32,
    pub vertex_count: usize,
    pub labels: Vec<String>,
    /// Steps in reduction order.
    pub steps: Vec<TraceStep>,
    pub final_vertex: usize,
}

impl ReductionTrace {
    /// True when every twin removal is a ratio-1 copy, i.e. the construction
    /// uses only weight-preserving copies.
    pub fn is_weight_preserving(&self) -> bool {
        self.steps.iter().all(|s| match s {
            TraceStep::RemoveTwin { ratio, .. } => ratio.is_one(),
            _ => true,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObstructionKind {
    /// A block carries edges of both signs.
    MixedSign { certificate: MixedSignCertificate },
    /// Reduction stopped on `vertices` with no pendant and no admissible pair.
    StuckCore { vertices: Vec<usize> },
    /// As `StuckCore`, with a forbidden induced subgraph found in the core's
    /// support.
    ForbiddenSubgraph { core: Vec<usize>, subgraph: ForbiddenSubgraph },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    #[serde(flatten)]
    pub kind: ObstructionKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    Accept(ReductionTrace),
    Reject(Obstruction),
}

impl Recognition {
    pub fn is_accept(&self) -> bool {
        matches!(self, Recognition::Accept(_))
    }

    pub fn trace(&self) -> Option<&ReductionTrace> {
        match self {
            Recognition::Accept(t) => Some(t),
            Recognition::Reject(_) => None,
        }
    }
}

pub fn recognize(g: &WeightedGraph) -> Result<Recognition> {
    let normalized = match normalize_signs(g)? {
        SignOutcome::Mixed(certificate) => {
            let detail = format!(
                "edges {c}-{p} (weight {wp}) and {c}-{q} (weight {wq}) have opposite signs inside one block",
                c = g.label(certificate.center),
                p = g.label(certificate.pos_edge.vertex),
                q = g.label(certificate.neg_edge.vertex),
                wp = crate::rational::Display(&certificate.pos_edge.weight),
                wq = crate::rational::Display(&certificate.neg_edge.weight),
            );
            return Ok(Recognition::Reject(Obstruction { kind: ObstructionKind::MixedSign { certificate }, detail }));
        }
        SignOutcome::Normalized(norm) => norm,
    };
    let mut steps: Vec<TraceStep> = normalized
        .flips
        .iter()
        .filter(|f| f.flipped)
        .map(|f| TraceStep::SignFlipBlock { block: f.block.iter().copied().collect() })
        .collect();

    let n = g.n();
    let mut work = normalized.graph;
    let mut alive = vec![true; n];
    let mut remaining = n;
    while remaining > 1 {
        if let Some(v) = (0..n).find(|&v| alive[v] && work.degree(v) == 1) {
            let (&attach, w) = work.incident(v).iter().next().unwrap();
            steps.push(TraceStep::RemovePendant { vertex: v, attach, weight: w.clone() });
            work.isolate(v);
            alive[v] = false;
            remaining -= 1;
            continue;
        }
        let blocks = blocks_among(&work, &alive).expect("reduction keeps the graph connected");
        let free: Vec<usize> = (0..n).filter(|&v| alive[v] && !blocks.articulation_vertices.contains(&v)).collect();
        let pair = free
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| free[i + 1..].iter().map(move |&v| (u, v)))
            .find_map(|(u, v)| contractible_pair(&work, u, v));
        let Some(pair) = pair else {
            return Ok(Recognition::Reject(stuck(&work, &alive)));
        };
        let (kept, removed) = (pair.u, pair.v);
        // pair.ratio = w(x, kept) / w(x, removed); scaling `removed` by it
        // makes the two rows equal.
        if !pair.ratio.is_one() {
            work = work.scale_vertex(removed, &pair.ratio);
            steps.push(TraceStep::ScaleVertex { vertex: removed, factor: pair.ratio.clone() });
        }
        let bridge = work.weight(removed, kept).cloned().unwrap_or_else(Rational::zero);
        steps.push(TraceStep::RemoveTwin { removed, kept, ratio: one(), bridge });
        work.isolate(removed);
        alive[removed] = false;
        remaining -= 1;
    }
    let final_vertex = alive.iter().position(|&a| a).expect("one vertex survives");
    Ok(Recognition::Accept(ReductionTrace {
        version: TRACE_VERSION,
        vertex_count: n,
        labels: g.labels().to_vec(),
        steps,
        final_vertex,
    }))
}

fn stuck(work: &WeightedGraph, alive: &[bool]) -> Obstruction {
    let core: BTreeSet<usize> = (0..alive.len()).filter(|&v| alive[v]).collect();
    let vertices: Vec<usize> = core.iter().copied().collect();
    let names: Vec<&str> = vertices.iter().map(|&v| work.label(v)).collect();
    let (sub, map) = induced_subgraph(work, &core).expect("core is nonempty");
    if let Ok(DhVerdict::Forbidden(found)) = is_distance_hereditary_oracle(&sub, DEFAULT_ORACLE_CAP) {
        let subgraph = ForbiddenSubgraph {
            kind: found.kind,
            vertices: found.vertices.iter().map(|&i| map[i]).collect(),
        };
        let detail = format!(
            "irreducible core {{{}}} contains an induced {} on {{{}}}",
            names.join(", "),
            subgraph.kind,
            subgraph.vertices.iter().map(|&v| work.label(v)).collect::<Vec<_>>().join(", ")
        );
        return Obstruction { kind: ObstructionKind::ForbiddenSubgraph { core: vertices, subgraph }, detail };
    }
    let detail = format!(
        "irreducible core {{{}}} has no pendant vertex and no contractible pair",
        names.join(", ")
    );
    Obstruction { kind: ObstructionKind::StuckCore { vertices }, detail }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures;
    use crate::rational::{int, ratio};

    fn c4(w: [i64; 4]) -> WeightedGraph {
        WeightedGraph::from_edges(4, [(0, 1, int(w[0])), (1, 2, int(w[1])), (2, 3, int(w[2])), (3, 0, int(w[3]))]).unwrap()
    }

    #[test]
    fn heavy_k4_is_accepted() {
        let g = fixtures::k4_one_heavy();
        let Recognition::Accept(trace) = recognize(&g).unwrap() else { panic!("K4 with one heavy edge is stable") };
        assert_eq!(replay_trace(&trace).unwrap(), g);
        assert!(trace.is_weight_preserving());
    }

    #[test]
    fn unit_house_is_rejected_with_name() {
        let Recognition::Reject(obs) = recognize(&fixtures::house()).unwrap() else { panic!() };
        match obs.kind {
            ObstructionKind::ForbiddenSubgraph { core, subgraph } => {
                assert_eq!(core, vec![0, 1, 2, 3, 4]);
                assert_eq!(subgraph.kind, ForbiddenKind::House);
            }
            other => panic!("unexpected obstruction {other:?}"),
        }
        assert!(obs.detail.contains("house"));
    }

    #[test]
    fn c4_needs_equal_opposite_products() {
        assert!(!recognize(&c4([1, 1, 1, 2])).unwrap().is_accept());
        assert!(!recognize(&c4([2, 3, 2, 3])).unwrap().is_accept());
        let good = c4([2, 3, 3, 2]);
        let Recognition::Accept(trace) = recognize(&good).unwrap() else { panic!() };
        assert_eq!(replay_trace(&trace).unwrap(), good);
        // The weighted C4 that is rejected has a unit-weight support that is
        // accepted, so the obstruction stays a bare core.
        let Recognition::Reject(obs) = recognize(&c4([1, 1, 1, 2])).unwrap() else { panic!() };
        assert_eq!(obs.kind, ObstructionKind::StuckCore { vertices: vec![0, 1, 2, 3] });
    }

    #[test]
    fn mixed_signs_are_certified() {
        let tri = WeightedGraph::from_edges(3, [(0, 1, int(1)), (1, 2, int(1)), (0, 2, int(-1))]).unwrap();
        let Recognition::Reject(obs) = recognize(&tri).unwrap() else { panic!() };
        assert!(matches!(obs.kind, ObstructionKind::MixedSign { .. }));
    }

    #[test]
    fn negative_blocks_are_flipped_in_the_trace() {
        let bowtie = WeightedGraph::from_edges(
            5,
            [(0, 1, int(-1)), (1, 2, int(-2)), (0, 2, int(-1)), (2, 3, ratio(1, 2)), (3, 4, int(1)), (2, 4, int(1))],
        )
        .unwrap();
        let Recognition::Accept(trace) = recognize(&bowtie).unwrap() else { panic!() };
        assert_eq!(trace.steps[0], TraceStep::SignFlipBlock { block: vec![0, 1, 2] });
        assert_eq!(replay_trace(&trace).unwrap(), bowtie);
    }

    #[test]
    fn single_vertex_and_k2() {
        let Recognition::Accept(t) = recognize(&WeightedGraph::new(1)).unwrap() else { panic!() };
        assert!(t.steps.is_empty());
        assert_eq!(t.final_vertex, 0);
        let k2 = WeightedGraph::from_edges(2, [(0, 1, int(1))]).unwrap();
        let Recognition::Accept(t) = recognize(&k2).unwrap() else { panic!() };
        assert_eq!(t.steps, vec![TraceStep::RemovePendant { vertex: 0, attach: 1, weight: int(1) }]);
        assert_eq!(replay_trace(&t).unwrap(), k2);
    }

    #[test]
    fn disconnected_input_is_an_error() {
        let g = WeightedGraph::unit(3, &[(0, 1)]).unwrap();
        assert_eq!(recognize(&g), Err(crate::Error::DisconnectedGraph));
    }

    #[test]
    fn trace_json_shape() {
        let Recognition::Accept(t) = recognize(&c4([2, 3, 3, 2])).unwrap() else { panic!() };
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(json["version"], 1);
        assert!(json["steps"].as_array().unwrap().iter().all(|s| s["op"].is_string()));
        let back: ReductionTrace = serde_json::from_value(json).unwrap();
        assert_eq!(back, t);
    }
}

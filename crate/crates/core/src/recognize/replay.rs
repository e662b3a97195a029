use super::{ReductionTrace, TraceStep};
use crate::error::{Error, Result};
use crate::graph::{biconnected_components, flip_block, induced_subgraph, WeightedGraph};
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// Working state while a trace is read backwards from its final vertex.
pub(crate) struct Construction {
    pub graph: WeightedGraph,
    pub alive: Vec<bool>,
}

impl Construction {
    pub fn start(trace: &ReductionTrace) -> Result<Self> {
        let n = trace.vertex_count;
        if n == 0 || trace.final_vertex >= n {
            return Err(malformed(format!("final vertex {} outside 0..{n}", trace.final_vertex)));
        }
        if trace.labels.len() != n {
            return Err(malformed(format!("{} labels for {n} vertices", trace.labels.len())));
        }
        let mut alive = vec![false; n];
        alive[trace.final_vertex] = true;
        Ok(Construction { graph: WeightedGraph::new(n).with_labels(trace.labels.clone()), alive })
    }

    pub fn live_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    fn require(&self, v: usize, live: bool) -> Result<()> {
        if v >= self.alive.len() {
            return Err(malformed(format!("vertex {v} does not exist")));
        }
        if self.alive[v] != live {
            let state = if live { "absent" } else { "already present" };
            return Err(malformed(format!("vertex {v} is {state} when its step is undone")));
        }
        Ok(())
    }

    /// Undoes one reduction step.
    pub fn undo(&mut self, step: &TraceStep) -> Result<()> {
        match step {
            TraceStep::RemovePendant { vertex, attach, weight } => {
                self.require(*vertex, false)?;
                self.require(*attach, true)?;
                if !weight.is_positive() {
                    return Err(malformed(format!("pendant weight {weight} is not positive")));
                }
                self.graph.set_weight(*vertex, *attach, weight.clone());
                self.alive[*vertex] = true;
            }
            TraceStep::RemoveTwin { removed, kept, ratio, bridge } => {
                self.require(*removed, false)?;
                self.require(*kept, true)?;
                if !ratio.is_positive() || bridge.is_negative() {
                    return Err(malformed(format!("twin ratio {ratio} / bridge {bridge} out of range")));
                }
                let copies: Vec<(usize, _)> =
                    self.graph.incident(*kept).iter().map(|(&t, w)| (t, w * ratio)).collect();
                if copies.is_empty() && bridge.is_zero() {
                    return Err(malformed(format!("copy of isolated vertex {kept} without a bridge is disconnected")));
                }
                for (t, w) in copies {
                    self.graph.set_weight(*removed, t, w);
                }
                if !bridge.is_zero() {
                    self.graph.set_weight(*removed, *kept, bridge.clone());
                }
                self.alive[*removed] = true;
            }
            TraceStep::ScaleVertex { vertex, factor } => {
                self.require(*vertex, true)?;
                if !factor.is_positive() {
                    return Err(malformed(format!("scale factor {factor} is not positive")));
                }
                self.graph = self.graph.scale_vertex(*vertex, &factor.recip());
            }
            TraceStep::SignFlipBlock { block } => {
                let set: BTreeSet<usize> = block.iter().copied().collect();
                for &v in &set {
                    self.require(v, true)?;
                }
                let live: BTreeSet<usize> = (0..self.alive.len()).filter(|&v| self.alive[v]).collect();
                let (sub, map) = induced_subgraph(&self.graph, &live)?;
                let blocks = biconnected_components(&sub)?;
                let is_block = blocks
                    .blocks
                    .iter()
                    .any(|b| b.iter().map(|&i| map[i]).collect::<BTreeSet<_>>() == set);
                if !is_block {
                    return Err(malformed(format!("{block:?} is not a block of the reconstructed graph")));
                }
                flip_block(&mut self.graph, &set);
            }
        }
        Ok(())
    }
}

fn malformed(msg: String) -> Error {
    Error::MalformedTrace(msg)
}

/// Rebuilds the graph a trace was recorded from.
pub fn replay_trace(trace: &ReductionTrace) -> Result<WeightedGraph> {
    let mut c = Construction::start(trace)?;
    for step in trace.steps.iter().rev() {
        c.undo(step)?;
    }
    if c.live_count() != trace.vertex_count {
        return Err(malformed(format!(
            "trace rebuilds {} of {} vertices",
            c.live_count(),
            trace.vertex_count
        )));
    }
    Ok(c.graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn trace(n: usize, steps: Vec<TraceStep>, final_vertex: usize) -> ReductionTrace {
        ReductionTrace {
            version: 1,
            vertex_count: n,
            labels: (1..=n).map(|i| i.to_string()).collect(),
            steps,
            final_vertex,
        }
    }

    #[test]
    fn unit_k2() {
        let t = trace(2, vec![TraceStep::RemovePendant { vertex: 0, attach: 1, weight: int(1) }], 1);
        assert_eq!(replay_trace(&t).unwrap(), WeightedGraph::unit(2, &[(0, 1)]).unwrap());
    }

    #[test]
    fn open_copy_of_single_vertex_is_malformed() {
        let t = trace(2, vec![TraceStep::RemoveTwin { removed: 1, kept: 0, ratio: int(1), bridge: int(0) }], 0);
        assert!(matches!(replay_trace(&t), Err(Error::MalformedTrace(_))));
    }

    #[test]
    fn structural_errors() {
        // Vertex re-added twice.
        let t = trace(
            3,
            vec![
                TraceStep::RemovePendant { vertex: 0, attach: 1, weight: int(1) },
                TraceStep::RemovePendant { vertex: 0, attach: 2, weight: int(1) },
            ],
            2,
        );
        assert!(replay_trace(&t).is_err());
        // Not every vertex rebuilt.
        assert!(replay_trace(&trace(3, vec![], 0)).is_err());
        // Nonexistent vertex.
        let t = trace(2, vec![TraceStep::ScaleVertex { vertex: 5, factor: int(2) }], 0);
        assert!(replay_trace(&t).is_err());
        // Nonpositive factor.
        let t = trace(
            2,
            vec![
                TraceStep::ScaleVertex { vertex: 0, factor: int(-2) },
                TraceStep::RemovePendant { vertex: 0, attach: 1, weight: int(1) },
            ],
            1,
        );
        assert!(replay_trace(&t).is_err());
        // A flip of something that is not a block.
        let t = trace(
            3,
            vec![
                TraceStep::SignFlipBlock { block: vec![0, 2] },
                TraceStep::RemovePendant { vertex: 0, attach: 1, weight: int(1) },
                TraceStep::RemovePendant { vertex: 1, attach: 2, weight: int(1) },
            ],
            2,
        );
        assert!(replay_trace(&t).is_err());
    }
}

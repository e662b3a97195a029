//! Linear factorization of the vertex spanning-tree polynomial of a stable
//! graph, read off its construction.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::poly::{LinearForm, Polynomial};
use crate::recognize::replay::Construction;
use crate::recognize::{ReductionTrace, TraceStep};
use crate::rational::{one, Rational};
use crate::span::vertex_span_poly;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// `P_{G,w} = constant * prod factors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFactorization {
    pub nvars: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub constant: Rational,
    pub factors: Vec<LinearForm>,
}

impl LinearFactorization {
    pub fn expand(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(self.nvars, self.constant.clone()), |acc, f| &acc * &f.to_polynomial(self.nvars))
    }

    pub fn all_nonnegative(&self) -> bool {
        self.factors.iter().all(|f| f.is_nonnegative() && f.has_positive_coefficient())
    }

    fn substitute_all(&mut self, var: usize, image: &LinearForm) {
        for f in &mut self.factors {
            *f = f.substitute(var, image);
        }
    }

    /// Multiplies every edge at `v` by `c` in a graph with at least one edge.
    fn scale(&mut self, v: usize, c: &Rational) {
        self.substitute_all(v, &LinearForm::from_pairs([(v, c.clone())]));
        self.constant *= c;
    }
}

fn star_form(g: &WeightedGraph, v: usize) -> LinearForm {
    LinearForm::from_pairs(g.incident(v).iter().map(|(&t, w)| (t, w.clone())))
}

pub fn factor_from_trace(trace: &ReductionTrace) -> Result<LinearFactorization> {
    let mut c = Construction::start(trace)?;
    let mut f = LinearFactorization { nvars: trace.vertex_count, constant: one(), factors: Vec::new() };
    for step in trace.steps.iter().rev() {
        let single = c.live_count() == 1;
        match step {
            TraceStep::RemovePendant { attach, weight, .. } => {
                f.constant *= weight;
                if !single {
                    f.factors.push(LinearForm::from_pairs([(*attach, one())]));
                }
            }
            TraceStep::RemoveTwin { removed, kept, ratio, bridge } => {
                let (r, k) = (*removed, *kept);
                // A general ratio is a copy with bridge p / ratio followed by
                // scaling the copy by ratio.
                let copy_bridge = bridge / ratio;
                if single {
                    if copy_bridge.is_zero() {
                        return Err(Error::MalformedTrace(format!("copy of isolated vertex {k} without a bridge")));
                    }
                    f.constant *= &copy_bridge;
                } else {
                    let mut new = star_form(&c.graph, k);
                    f.substitute_all(k, &LinearForm::from_pairs([(k, one()), (r, one())]));
                    new.add(k, &copy_bridge);
                    new.add(r, &copy_bridge);
                    f.factors.push(new);
                }
                if !ratio.is_one() && ratio.is_positive() {
                    f.scale(r, ratio);
                }
            }
            TraceStep::ScaleVertex { vertex, factor } => {
                if !single && factor.is_positive() {
                    f.scale(*vertex, &factor.recip());
                }
            }
            TraceStep::SignFlipBlock { block } => {
                if block.len() % 2 == 0 {
                    f.constant = -f.constant.clone();
                }
            }
        }
        c.undo(step)?;
    }
    if c.live_count() != trace.vertex_count {
        return Err(Error::MalformedTrace(format!(
            "trace rebuilds {} of {} vertices",
            c.live_count(),
            trace.vertex_count
        )));
    }
    Ok(f)
}

/// Exact comparison of the expanded factorization with the spanning-tree
/// sum.
pub fn verify_factorization(g: &WeightedGraph, f: &LinearFactorization) -> bool {
    if f.nvars != g.n() {
        return false;
    }
    match vertex_span_poly(g) {
        Ok(p) => p == f.expand(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{fixtures, random_stable_corpus, ConstructionOptions};
    use crate::poly::parse_polynomial;
    use crate::rational::int;
    use crate::recognize::{recognize, Recognition};

    fn factor(g: &WeightedGraph) -> LinearFactorization {
        let Recognition::Accept(t) = recognize(g).unwrap() else { panic!("expected a stable graph") };
        factor_from_trace(&t).unwrap()
    }

    fn with_nvars(text: &str, n: usize) -> Polynomial {
        parse_polynomial(text).unwrap().with_nvars(n)
    }

    #[test]
    fn unit_c4() {
        let f = factor(&fixtures::cycle(4));
        assert_eq!(f.constant, int(1));
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(), with_nvars("(x1+x3)*(x2+x4)", 4));
        let mut forms: Vec<_> = f.factors.iter().map(|l| l.to_polynomial(4).to_string()).collect();
        forms.sort();
        assert_eq!(forms, vec!["x1 + x3", "x2 + x4"]);
    }

    #[test]
    fn weighted_path_and_star() {
        let path = WeightedGraph::from_edges(3, [(0, 1, int(2)), (1, 2, int(5))]).unwrap();
        let f = factor(&path);
        assert_eq!(f.constant, int(10));
        assert_eq!(f.factors, vec![LinearForm::from_pairs([(1, int(1))])]);
        let f = factor(&fixtures::star(3));
        assert_eq!(f.constant, int(1));
        assert_eq!(f.expand(), with_nvars("x1^2", 4));
    }

    #[test]
    fn unit_k4_matches_tree_sum() {
        let g = fixtures::complete(4);
        let f = factor(&g);
        assert!(verify_factorization(&g, &f));
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn corrupted_factor_is_detected() {
        let g = fixtures::k4_one_heavy();
        let mut f = factor(&g);
        assert!(verify_factorization(&g, &f));
        let v = *f.factors[0].coefficients.keys().next().unwrap();
        f.factors[0].add(v, &int(1));
        assert!(!verify_factorization(&g, &f));
    }

    #[test]
    fn signed_graphs_factor_with_signed_constant() {
        // Negative triangles contribute (-1)^2; a negative K4 contributes -1.
        let g = fixtures::signed_dumbbell();
        let f = factor(&g);
        assert!(verify_factorization(&g, &f));
        assert!(f.constant.is_positive());
        let mut k4 = fixtures::complete(4);
        for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            k4.set_weight(u, v, int(-1));
        }
        let f = factor(&k4);
        assert!(verify_factorization(&k4, &f));
        assert!(f.constant.is_negative());
    }

    #[test]
    fn general_ratio_twin_steps() {
        // Pendant 2 on 1; then 0 copied from 1 with ratio 3 and bridge 2.
        let trace = ReductionTrace {
            version: 1,
            vertex_count: 3,
            labels: vec!["1".into(), "2".into(), "3".into()],
            steps: vec![
                TraceStep::RemoveTwin { removed: 0, kept: 1, ratio: int(3), bridge: int(2) },
                TraceStep::RemovePendant { vertex: 2, attach: 1, weight: int(1) },
            ],
            final_vertex: 1,
        };
        let g = crate::recognize::replay_trace(&trace).unwrap();
        assert_eq!(g.weight(0, 2), Some(&int(3)));
        assert!(verify_factorization(&g, &factor_from_trace(&trace).unwrap()));
    }

    #[test]
    fn random_constructions() {
        let corpus = random_stable_corpus(40, 2..=7, 11, ConstructionOptions { sign_flips: true, ..Default::default() });
        for g in &corpus {
            let f = factor(g);
            assert_eq!(f.factors.len(), g.n() - 2, "{g:?}");
            assert!(f.all_nonnegative());
            assert!(verify_factorization(g, &f));
        }
    }
}

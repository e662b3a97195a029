use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stablespan::corpus::{self, ConstructionOptions};
use stablespan::factor::{factor_from_trace, verify_factorization};
use stablespan::graph::{format_graph, parse_graph, ParseOptions};
use stablespan::rankdec::{build_rank_decomposition, tree_width};
use stablespan::recognize::{recognize, replay_trace, Recognition, ReductionTrace};
use stablespan::span::vertex_span_poly;

const GRAPH: &str = "\
# two triangles sharing vertex c, one scaled
n 5
a b 2
b c 2
a c 2
c d 1
d e 3/2
c e 3/2
";

#[test]
fn file_to_factorization_and_decomposition() {
    let g = parse_graph(GRAPH, ParseOptions::default()).unwrap();
    let Recognition::Accept(trace) = recognize(&g).unwrap() else { panic!("rejected") };
    let json = serde_json::to_string(&trace).unwrap();
    let back: ReductionTrace = serde_json::from_str(&json).unwrap();
    assert_eq!(back, trace);
    assert_eq!(replay_trace(&back).unwrap(), g);
    let f = factor_from_trace(&back).unwrap();
    assert_eq!(f.factors.len(), 3);
    assert!(verify_factorization(&g, &f));
    let tree = build_rank_decomposition(&back).unwrap();
    assert_eq!(tree_width(&g, &tree).unwrap(), 1);
    assert_eq!(parse_graph(&format_graph(&g), ParseOptions::default()).unwrap(), g);
}

#[test]
fn relabelling_preserves_polynomial_up_to_renaming() {
    let g = parse_graph(GRAPH, ParseOptions::default()).unwrap();
    let perm = [4, 2, 0, 1, 3];
    let h = g.permute(&perm);
    let p = vertex_span_poly(&g).unwrap().rename_vars(&perm, 5);
    assert_eq!(vertex_span_poly(&h).unwrap(), p);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructed_graphs_are_accepted_under_any_relabelling(seed in any::<u64>(), n in 1usize..9, shift in 0usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let opts = ConstructionOptions { sign_flips: true, ..ConstructionOptions::default() };
        let g = corpus::random_stable(n, &mut rng, opts);
        let perm: Vec<usize> = (0..n).map(|v| (v + shift) % n).collect();
        let h = g.permute(&perm);
        for graph in [&g, &h] {
            let Recognition::Accept(trace) = recognize(graph).unwrap() else { panic!("rejected") };
            prop_assert_eq!(&replay_trace(&trace).unwrap(), graph);
            let f = factor_from_trace(&trace).unwrap();
            prop_assert!(verify_factorization(graph, &f));
        }
    }

    #[test]
    fn stable_weighting_implies_stable_support(seed in any::<u64>(), n in 2usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = corpus::random_weighted(n, 0.5, &mut rng);
        if recognize(&g).unwrap().is_accept() {
            prop_assert!(recognize(&g.support()).unwrap().is_accept());
        }
    }
}

use crate::args::{Cli, Command, GlobalOpts};
use crate::report::*;
use anyhow::{bail, Context, Result};
use stablespan::corpus::{self, fixtures, ConstructionOptions};
use stablespan::factor::{factor_from_trace, verify_factorization, LinearFactorization};
use stablespan::graph::{format_graph, parse_graph, ParseOptions, WeightedGraph};
use stablespan::poly::{parse_polynomial, Polynomial};
use stablespan::probe::{falsify, FalsifyOutcome};
use stablespan::rankdec::{build_rank_decomposition, edge_ranks, exhaustive_min_rankwidth, DEFAULT_RANKWIDTH_CAP};
use stablespan::rational::Display as R;
use stablespan::recognize::{is_distance_hereditary_oracle, recognize, DhVerdict, Recognition, ReductionTrace, TraceStep};
use stablespan::selfcheck::{run_self_check, SelfCheckConfig};
use stablespan::span::{edge_span_poly, matrix_tree_check, vertex_span_poly};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

/// A finished command: the report and its text rendering.
pub struct Outcome {
    pub report: Report,
    pub text: String,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        self.report.verdict.exit_code()
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.report.to_json()
        } else {
            self.text.clone()
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let start = Instant::now();
    let mut outcome = dispatch(&cli.command, &cli.global)?;
    if cli.global.timings {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        outcome.report.timings = Some(BTreeMap::from([("total_ms".to_string(), ms)]));
        let _ = writeln!(outcome.text, "time: {ms:.1} ms");
    }
    Ok(outcome)
}

fn dispatch(command: &Command, g: &GlobalOpts) -> Result<Outcome> {
    match command {
        Command::Recognize { file, trace_out } => cmd_recognize(&load(file, g)?, trace_out.as_deref()),
        Command::Poly { file, edge, check, .. } => cmd_poly(&load(file, g)?, *edge, *check),
        Command::Factor { file, verify } => cmd_factor(&load(file, g)?, *verify),
        Command::Rankdec { file, oracle } => cmd_rankdec(&load(file, g)?, *oracle),
        Command::Falsify { file, poly, trials } => {
            let (input, p) = match (file, poly) {
                (_, Some(expr)) => {
                    let p = parse_polynomial(expr).map_err(|e| anyhow::anyhow!("cannot parse polynomial: {e}"))?;
                    (Input::Polynomial { expression: expr.clone(), variables: p.nvars() }, p)
                }
                (Some(file), None) => {
                    let loaded = load(file, g)?;
                    (loaded.input.clone(), vertex_span_poly(&loaded.graph)?)
                }
                (None, None) => bail!("give a graph file or --poly"),
            };
            cmd_falsify(input, &p, *trials, g.seed)
        }
        Command::Oracle { file, cap } => cmd_oracle(&load(file, g)?, *cap),
        Command::Corpus { max_n, random, self_check, export } => cmd_corpus(*max_n, *random, g.seed, *self_check, export.as_deref()),
    }
}

struct Loaded {
    graph: WeightedGraph,
    input: Input,
}

fn load(path: &Path, g: &GlobalOpts) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let graph = parse_graph(&text, ParseOptions { drop_zero_edges: g.drop_zero_edges })
        .with_context(|| format!("invalid graph file {}", path.display()))?;
    let input = Input::Graph {
        path: path.display().to_string(),
        vertices: graph.n(),
        edges: graph.edge_count(),
        labels: graph.labels().to_vec(),
    };
    Ok(Loaded { graph, input })
}

fn describe_step(step: &TraceStep, labels: &[String]) -> String {
    let l = |v: &usize| labels[*v].as_str();
    match step {
        TraceStep::SignFlipBlock { block } => {
            format!("negate block {{{}}}", block.iter().map(l).collect::<Vec<_>>().join(", "))
        }
        TraceStep::ScaleVertex { vertex, factor } => format!("scale edges at {} by {}", l(vertex), R(factor)),
        TraceStep::RemovePendant { vertex, attach, weight } => {
            format!("remove pendant {} (on {}, weight {})", l(vertex), l(attach), R(weight))
        }
        TraceStep::RemoveTwin { removed, kept, ratio, bridge } => {
            let mut s = format!("remove {} as a copy of {}", l(removed), l(kept));
            if !is_one(ratio) {
                let _ = write!(s, " (ratio {})", R(ratio));
            }
            if !is_zero(bridge) {
                let _ = write!(s, " with bridge {}", R(bridge));
            }
            s
        }
    }
}

fn is_one(r: &stablespan::rational::Rational) -> bool {
    *r == stablespan::rational::one()
}

fn is_zero(r: &stablespan::rational::Rational) -> bool {
    *r == stablespan::rational::zero()
}

fn trace_text(trace: &ReductionTrace) -> String {
    let mut s = format!("accepted: {} steps\n", trace.steps.len());
    for (i, step) in trace.steps.iter().enumerate() {
        let _ = writeln!(s, "  {:>3}. {}", i + 1, describe_step(step, &trace.labels));
    }
    let _ = writeln!(s, "  final vertex: {}", trace.labels[trace.final_vertex]);
    s
}

fn cmd_recognize(loaded: &Loaded, trace_out: Option<&Path>) -> Result<Outcome> {
    let recognition = recognize(&loaded.graph)?;
    match recognition {
        Recognition::Accept(trace) => {
            let mut text = trace_text(&trace);
            if let Some(path) = trace_out {
                let json = serde_json::to_string_pretty(&trace)? + "\n";
                std::fs::write(path, json).with_context(|| format!("cannot write {}", path.display()))?;
                let _ = writeln!(text, "trace written to {}", path.display());
            }
            let mut report = Report::new("recognize", loaded.input.clone(), Verdict::Accepted);
            report.trace = Some(trace);
            Ok(Outcome { report, text })
        }
        Recognition::Reject(obs) => {
            let mut text = format!("rejected: {}\n", obs.detail);
            if trace_out.is_some() {
                text.push_str("no trace written\n");
            }
            let mut report = Report::new("recognize", loaded.input.clone(), Verdict::Rejected);
            report.obstruction = Some(obs);
            Ok(Outcome { report, text })
        }
    }
}

fn vertex_legend(g: &WeightedGraph) -> Vec<(String, String)> {
    (0..g.n()).map(|v| (format!("x{}", v + 1), g.label(v).to_string())).collect()
}

fn default_labels(g: &WeightedGraph) -> bool {
    g.labels().iter().enumerate().all(|(i, l)| *l == (i + 1).to_string())
}

fn legend_text(legend: &[(String, String)]) -> String {
    legend.iter().map(|(x, v)| format!("{x} = {v}")).collect::<Vec<_>>().join(", ")
}

fn cmd_poly(loaded: &Loaded, edge: bool, check: bool) -> Result<Outcome> {
    let g = &loaded.graph;
    let (kind, p, variables) = if edge {
        let legend = g
            .edges()
            .enumerate()
            .map(|(i, (u, v, _))| (format!("x{}", i + 1), format!("{}-{}", g.label(u), g.label(v))))
            .collect();
        ("edge", edge_span_poly(g)?, legend)
    } else {
        ("vertex", vertex_span_poly(g)?, vertex_legend(g))
    };
    let mut text = format!("{p}\n");
    if edge || !default_labels(g) {
        let _ = writeln!(text, "where {}", legend_text(&variables));
    }
    let matrix_tree = if check {
        if g.n() < 2 {
            bail!("the cofactor check needs at least two vertices");
        }
        let ok = matrix_tree_check(g)?;
        let _ = writeln!(text, "cofactor check: {}", if ok { "equal" } else { "MISMATCH" });
        Some(ok)
    } else {
        None
    };
    let verdict = match matrix_tree {
        Some(true) => Verdict::Verified,
        Some(false) => Verdict::Mismatch,
        None => Verdict::Computed,
    };
    let mut report = Report::new("poly", loaded.input.clone(), verdict);
    report.polynomial =
        Some(PolynomialReport { kind: kind.into(), text: p.to_string(), terms: p.len(), variables, matrix_tree });
    Ok(Outcome { report, text })
}

fn factorization_text(f: &LinearFactorization) -> String {
    let mut parts: Vec<String> = f.factors.iter().map(|l| format!("({})", l.to_polynomial(f.nvars))).collect();
    if f.constant != stablespan::rational::one() || parts.is_empty() {
        parts.insert(0, R(&f.constant).to_string());
    }
    parts.join("*")
}

fn rejected(command: &str, loaded: &Loaded, obs: stablespan::recognize::Obstruction) -> Outcome {
    let text = format!("rejected: {}\n", obs.detail);
    let mut report = Report::new(command, loaded.input.clone(), Verdict::Rejected);
    report.obstruction = Some(obs);
    Outcome { report, text }
}

fn cmd_factor(loaded: &Loaded, verify: bool) -> Result<Outcome> {
    let g = &loaded.graph;
    let trace = match recognize(g)? {
        Recognition::Accept(t) => t,
        Recognition::Reject(obs) => return Ok(rejected("factor", loaded, obs)),
    };
    let f = factor_from_trace(&trace)?;
    let rendered = factorization_text(&f);
    let mut text = format!("P = {rendered}\n");
    if !default_labels(g) {
        let _ = writeln!(text, "where {}", legend_text(&vertex_legend(g)));
    }
    let verified = verify.then(|| verify_factorization(g, &f));
    if let Some(ok) = verified {
        let _ = writeln!(text, "expansion check: {}", if ok { "equal to the spanning-tree sum" } else { "MISMATCH" });
    }
    let verdict = match verified {
        Some(true) => Verdict::Verified,
        Some(false) => Verdict::Mismatch,
        None => Verdict::Accepted,
    };
    let mut report = Report::new("factor", loaded.input.clone(), verdict);
    report.factorization = Some(FactorizationReport { factorization: f, text: rendered, verified });
    report.trace = Some(trace);
    Ok(Outcome { report, text })
}

fn cmd_rankdec(loaded: &Loaded, oracle: bool) -> Result<Outcome> {
    let g = &loaded.graph;
    let min_width = if oracle { Some(exhaustive_min_rankwidth(g, DEFAULT_RANKWIDTH_CAP)?) } else { None };
    let mut outcome = match recognize(g)? {
        Recognition::Reject(obs) => rejected("rankdec", loaded, obs),
        Recognition::Accept(trace) => {
            let tree = build_rank_decomposition(&trace)?;
            let ranks = edge_ranks(g, &tree)?;
            let width = ranks.iter().map(|r| r.rank).max().unwrap_or(0);
            let rendered = tree.render(g.labels());
            let mut text = format!("tree: {rendered}\nwidth: {width}\n");
            for r in &ranks {
                let other: Vec<usize> = (0..g.n()).filter(|v| !r.side.contains(v)).collect();
                let small = if other.len() < r.side.len() { &other } else { &r.side };
                let side: Vec<&str> = small.iter().map(|&v| g.label(v)).collect();
                let _ = writeln!(text, "  cut {{{}}}: rank {}", side.join(", "), r.rank);
            }
            let mut report = Report::new("rankdec", loaded.input.clone(), Verdict::Accepted);
            report.decomposition = Some(DecompositionReport { tree, rendered, edge_ranks: ranks, width });
            Outcome { report, text }
        }
    };
    if let Some(w) = min_width {
        let _ = writeln!(outcome.text, "minimum width over all cubic trees: {w}");
        outcome.report.min_rank_width = Some(w);
    }
    Ok(outcome)
}

fn cmd_falsify(input: Input, p: &Polynomial, trials: u64, seed: u64) -> Result<Outcome> {
    let outcome = falsify(p, trials, seed)?;
    let text = match &outcome {
        FalsifyOutcome::Certificate { trial, certificate } => {
            let mut s = format!("falsified at trial {trial}: zero in the upper half-plane\n");
            for (v, r) in &certificate.real_substitutions {
                let _ = writeln!(s, "  x{} = {}", v + 1, R(r));
            }
            for (v, z) in &certificate.hpoint {
                let _ = writeln!(s, "  x{} = {}", v + 1, z);
            }
            s
        }
        FalsifyOutcome::RealRootednessViolation { trial, witness } => format!(
            "falsified at trial {trial}: restriction of degree {} along a positive direction has only {} real roots\n",
            witness.degree, witness.real_roots
        ),
        FalsifyOutcome::NotFound { trials } => format!("no zero found in {trials} trials\n"),
    };
    let verdict = if outcome.is_falsified() { Verdict::Falsified } else { Verdict::NotFound };
    let mut report = Report::new("falsify", input, verdict);
    report.falsify = Some(outcome);
    Ok(Outcome { report, text })
}

fn cmd_oracle(loaded: &Loaded, cap: usize) -> Result<Outcome> {
    let g = &loaded.graph;
    let verdict = is_distance_hereditary_oracle(g, cap)?;
    let (v, text) = match &verdict {
        DhVerdict::DistanceHereditary => (Verdict::DistanceHereditary, "distance hereditary\n".to_string()),
        DhVerdict::Forbidden(f) => {
            let names: Vec<&str> = f.vertices.iter().map(|&v| g.label(v)).collect();
            (Verdict::Forbidden, format!("induced {} on {{{}}}\n", f.kind, names.join(", ")))
        }
    };
    let mut report = Report::new("oracle", loaded.input.clone(), v);
    report.oracle = Some(verdict);
    Ok(Outcome { report, text })
}

fn family(name: &str, graphs: &[WeightedGraph]) -> Result<FamilySummary> {
    let mut accepted = 0;
    for g in graphs {
        accepted += usize::from(recognize(g)?.is_accept());
    }
    Ok(FamilySummary { name: name.into(), graphs: graphs.len(), accepted })
}

fn cmd_corpus(max_n: usize, random: usize, seed: u64, self_check: bool, export: Option<&Path>) -> Result<Outcome> {
    if !(1..=8).contains(&max_n) {
        bail!("--max-n must be between 1 and 8");
    }
    let input = Input::Corpus { max_n, seed, random_graphs: random };
    let mut text = String::new();
    if let Some(dir) = export {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for (name, g) in fixtures::named() {
            let path = dir.join(format!("{name}.graph"));
            std::fs::write(&path, format!("# {name}\n{}", format_graph(&g)))
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
        let _ = writeln!(text, "fixtures written to {}", dir.display());
    }
    if self_check {
        let cfg = SelfCheckConfig { max_n, seed, random_graphs: random, ..Default::default() };
        let mut passed = Vec::new();
        let result = run_self_check(&cfg, |c| {
            passed.push(c.clone());
        });
        for c in &passed {
            let _ = writeln!(text, "ok      {} ({} cases)", c.name, c.cases);
        }
        let (verdict, violation) = match result {
            Ok(_) => (Verdict::Passed, None),
            Err(v) => {
                let _ = writeln!(text, "FAILED  {v}");
                (Verdict::Failed, Some(v.to_string()))
            }
        };
        let mut report = Report::new("corpus", input, verdict);
        report.self_check = Some(SelfCheckReport { passed, violation });
        return Ok(Outcome { report, text });
    }
    let small = max_n.min(6);
    let top = max_n.max(3);
    let unit: Vec<WeightedGraph> = (1..=small).flat_map(corpus::all_connected_labeled).collect();
    let classes: Vec<WeightedGraph> = (1..=small).flat_map(corpus::connected_classes).collect();
    let stable = corpus::random_stable_corpus(random, 1..=top, seed, ConstructionOptions::default());
    let signed = corpus::random_stable_corpus(
        random,
        2..=top,
        seed.wrapping_add(1),
        ConstructionOptions { sign_flips: true, ..Default::default() },
    );
    let weighted = corpus::random_weighted_corpus(random, 3..=top, seed);
    let named: Vec<WeightedGraph> = fixtures::named().into_iter().map(|(_, g)| g).collect();
    let families = vec![
        family("connected labelled unit graphs", &unit)?,
        family("isomorphism classes", &classes)?,
        family("random constructions", &stable)?,
        family("random signed constructions", &signed)?,
        family("random weighted graphs", &weighted)?,
        family("named fixtures", &named)?,
    ];
    for f in &families {
        let _ = writeln!(text, "{:>6} {:<32} {:>6} accepted", f.graphs, f.name, f.accepted);
    }
    let mut report = Report::new("corpus", input, Verdict::Computed);
    report.corpus = Some(CorpusSummary { families });
    Ok(Outcome { report, text })
}

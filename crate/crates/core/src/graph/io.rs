//! Line-oriented graph files.
//!
//! ```text
//! # comment
//! n 4
//! 1 2 3/2
//! 2 3 -1
//! ```
//!
//! The first non-blank line is `n <count>`, every further line is an edge
//! `u v w` with vertex names matching `[A-Za-z0-9_]+` and a rational weight.
//! If every name is an integer in `1..=n`, vertex `k` gets index `k - 1`;
//! otherwise names are numbered in order of first appearance and vertices
//! that never appear are labelled `_<index>`.

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};
use num_traits::Zero;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Drop zero-weight edges instead of rejecting the file.
    pub drop_zero_edges: bool,
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_graph(text: &str, opts: ParseOptions) -> Result<WeightedGraph> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut n: Option<usize> = None;
    let mut raw_edges: Vec<(usize, String, String, Rational)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => {
                if fields.len() != 2 || fields[0] != "n" {
                    return Err(err(lineno, format!("expected header `n <count>`, found {line:?}")));
                }
                let count: usize = fields[1]
                    .parse()
                    .map_err(|_| err(lineno, format!("invalid vertex count {:?}", fields[1])))?;
                if count == 0 {
                    return Err(err(lineno, "vertex count must be positive".into()));
                }
                n = Some(count);
            }
            Some(_) => {
                if fields.len() != 3 {
                    return Err(err(lineno, format!("expected `u v weight`, found {line:?}")));
                }
                for name in &fields[..2] {
                    if !valid_name(name) {
                        return Err(err(lineno, format!("invalid vertex name {name:?}")));
                    }
                }
                let w = parse_rational(fields[2]).map_err(|m| err(lineno, m))?;
                raw_edges.push((lineno, fields[0].to_string(), fields[1].to_string(), w));
            }
        }
    }
    let n = n.ok_or_else(|| err(1, "missing header `n <count>`".into()))?;

    let mut order: Vec<String> = Vec::new();
    for (_, a, b, _) in &raw_edges {
        for name in [a, b] {
            if !order.contains(name) {
                order.push(name.clone());
            }
        }
    }
    let numeric = order
        .iter()
        .all(|s| s.parse::<usize>().is_ok_and(|k| (1..=n).contains(&k)) && !s.starts_with('0'));
    let mut index: HashMap<String, usize> = HashMap::new();
    let labels: Vec<String> = if numeric {
        for s in &order {
            index.insert(s.clone(), s.parse::<usize>().unwrap() - 1);
        }
        (1..=n).map(|k| k.to_string()).collect()
    } else {
        if order.len() > n {
            return Err(err(1, format!("{} distinct vertex names but n = {n}", order.len())));
        }
        let mut labels: Vec<String> = order.clone();
        for (i, s) in order.iter().enumerate() {
            index.insert(s.clone(), i);
        }
        labels.extend((order.len()..n).map(|i| format!("_{i}")));
        labels
    };

    let mut g = WeightedGraph::new(n).with_labels(labels);
    for (lineno, a, b, w) in raw_edges {
        if w.is_zero() && opts.drop_zero_edges {
            continue;
        }
        let (u, v) = (index[&a], index[&b]);
        g.add_edge(u, v, w).map_err(|e| match e {
            Error::ZeroWeightEdge(..) => e,
            Error::SelfLoop(_) => err(lineno, format!("self-loop at vertex {a}")),
            Error::DuplicateEdge(..) => err(lineno, format!("duplicate edge {a}-{b}")),
            other => err(lineno, other.to_string()),
        })?;
    }
    Ok(g)
}

/// Inverse of [`parse_graph`] up to comments and edge order.
pub fn format_graph(g: &WeightedGraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v, w) in g.edges() {
        out.push_str(&format!("{} {} {}\n", g.label(u), g.label(v), format_rational(w)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn numeric_names_map_to_indices() {
        let g = parse_graph("# heavy edge\nn 3\n3 1 3/2\n1 2 -1 # trailing\n\n", ParseOptions::default()).unwrap();
        assert_eq!(g.weight(0, 2), Some(&ratio(3, 2)));
        assert_eq!(g.weight(0, 1), Some(&int(-1)));
        assert_eq!(g.labels(), ["1", "2", "3"]);
        assert_eq!(parse_graph(&format_graph(&g), ParseOptions::default()).unwrap(), g);
    }

    #[test]
    fn symbolic_names_in_order_of_appearance() {
        let g = parse_graph("n 3\nb a 1\na c 2\n", ParseOptions::default()).unwrap();
        assert_eq!(g.labels(), ["b", "a", "c"]);
        assert_eq!(g.weight(1, 2), Some(&int(2)));
        let zero_based = parse_graph("n 2\n0 1 1\n", ParseOptions::default()).unwrap();
        assert_eq!(zero_based.labels(), ["0", "1"]);
    }

    #[test]
    fn zero_weights_are_rejected_unless_dropped() {
        let text = "n 3\n1 2 1\n2 3 0\n";
        assert_eq!(parse_graph(text, ParseOptions::default()), Err(Error::ZeroWeightEdge(1, 2)));
        let g = parse_graph(text, ParseOptions { drop_zero_edges: true }).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn malformed_inputs() {
        let bad = [
            "",
            "1 2 1\n",
            "n x\n",
            "n 0\n",
            "n 2\n1 2\n",
            "n 2\n1 2 1/0\n",
            "n 2\n1 1 1\n",
            "n 2\n1 2 1\n2 1 1\n",
            "n 2\na b 1\nb c 1\n",
            "n 2\na-b c 1\n",
        ];
        for text in bad {
            assert!(matches!(parse_graph(text, ParseOptions::default()), Err(Error::Parse { .. })), "{text:?}");
        }
    }
}

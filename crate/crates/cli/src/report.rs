//! Versioned JSON report shared by every subcommand.

use serde::{Deserialize, Serialize};
use stablespan::factor::LinearFactorization;
use stablespan::probe::FalsifyOutcome;
use stablespan::rankdec::{CutRankResult, DecompositionTree};
use stablespan::recognize::{DhVerdict, Obstruction, ReductionTrace};
use stablespan::selfcheck::CheckOutcome;
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Accepted,
    Rejected,
    Computed,
    Verified,
    Mismatch,
    Falsified,
    NotFound,
    DistanceHereditary,
    Forbidden,
    Passed,
    Failed,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Accepted
            | Verdict::Computed
            | Verdict::Verified
            | Verdict::NotFound
            | Verdict::DistanceHereditary
            | Verdict::Passed => 0,
            Verdict::Rejected | Verdict::Mismatch | Verdict::Falsified | Verdict::Forbidden | Verdict::Failed => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Input {
    Graph { path: String, vertices: usize, edges: usize, labels: Vec<String> },
    Polynomial { expression: String, variables: usize },
    Corpus { max_n: usize, seed: u64, random_graphs: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialReport {
    /// `vertex` or `edge`.
    pub kind: String,
    pub text: String,
    pub terms: usize,
    /// Variable names with the vertex or edge each stands for.
    pub variables: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_tree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub factorization: LinearFactorization,
    /// `constant * (f1) * (f2) ...` in polynomial text form.
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub tree: DecompositionTree,
    pub rendered: String,
    pub edge_ranks: Vec<CutRankResult>,
    pub width: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub families: Vec<FamilySummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub name: String,
    pub graphs: usize,
    pub accepted: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfCheckReport {
    pub passed: Vec<CheckOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub input: Input,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<ReductionTrace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<PolynomialReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization: Option<FactorizationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_rank_width: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub falsify: Option<FalsifyOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<DhVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus: Option<CorpusSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_check: Option<SelfCheckReport>,
    /// Wall-clock milliseconds per phase; present only when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn new(command: &str, input: Input, verdict: Verdict) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input,
            verdict,
            trace: None,
            obstruction: None,
            polynomial: None,
            factorization: None,
            decomposition: None,
            min_rank_width: None,
            falsify: None,
            oracle: None,
            corpus: None,
            self_check: None,
            timings: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }
}

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "stablespan", version, about = "Weighted stable graphs: recognition, factorization, rank decompositions and zero certificates")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Silently drop edges of weight 0 instead of rejecting the file.
    #[arg(long, global = true)]
    pub drop_zero_edges: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide weighted stability and print the reduction trace or obstruction.
    Recognize {
        file: PathBuf,
        /// Write the reduction trace as JSON to this path.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Print the spanning-tree polynomial.
    Poly {
        file: PathBuf,
        /// Edge polynomial (one variable per edge).
        #[arg(long, conflicts_with = "vertex")]
        edge: bool,
        /// Vertex polynomial (the default).
        #[arg(long)]
        vertex: bool,
        /// Cross-check the vertex polynomial against the symbolic Laplacian cofactor.
        #[arg(long, conflicts_with = "edge")]
        check: bool,
    },
    /// Factor the vertex polynomial of a stable graph into linear forms.
    Factor {
        file: PathBuf,
        /// Compare the expanded product with the spanning-tree sum.
        #[arg(long)]
        verify: bool,
    },
    /// Build a width-one rank decomposition with per-edge cut-ranks.
    Rankdec {
        file: PathBuf,
        /// Also compute the minimum width over all cubic trees (n <= 7).
        #[arg(long)]
        oracle: bool,
    },
    /// Search for an upper-half-plane zero of a graph or polynomial.
    Falsify {
        /// Graph file whose vertex polynomial is probed.
        #[arg(required_unless_present = "poly", conflicts_with = "poly")]
        file: Option<PathBuf>,
        /// Polynomial expression in x1, x2, ...
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    /// Forbidden-induced-subgraph test on the unweighted support.
    Oracle {
        file: PathBuf,
        /// Largest vertex count accepted.
        #[arg(long, default_value_t = 10)]
        cap: usize,
    },
    /// Generate the test corpus, optionally running every invariant on it.
    Corpus {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Size of each random family.
        #[arg(long, default_value_t = 100)]
        random: usize,
        /// Run the cross-module invariant suite.
        #[arg(long)]
        self_check: bool,
        /// Write the named fixtures as graph files into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

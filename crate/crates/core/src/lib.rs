//! Weighted stable graphs: recognition, spanning-tree polynomials and their
//! linear factorizations, rank-width-1 decompositions, and exact
//! upper-half-plane zero certificates for unstable polynomials.
//!
//! A weighted graph is *stable* when its vertex spanning-tree polynomial
//! `P_{G,w}(x) = sum_T prod_{e in T} w(e) prod_v x_v^(deg_T(v) - 1)` has no
//! zero with every coordinate in the open upper half-plane. For positive
//! weights these are exactly the graphs built from one vertex by
//! weight-preserving twin copies, pendant gluings and vertex scalings.

pub mod corpus;
pub mod error;
pub mod factor;
pub mod graph;
pub mod poly;
pub mod probe;
pub mod rankdec;
pub mod rational;
pub mod recognize;
pub mod selfcheck;
pub mod span;

pub use error::{Error, Result};

//! Exact Bruhat interval polytopes in the symmetric group: permutations and
//! Bruhat order, intervals and their digraphs, exact hulls and face
//! lattices, classification, and exhaustive scans.

pub mod classify;
pub mod error;
pub mod graphs;
pub mod interval;
pub mod perm;
pub mod polytope;
pub mod scan;

pub use classify::{classify, classify_combinatorial, ClassificationReport};
pub use error::{Error, Result};
pub use interval::{build_interval, BruhatInterval};
pub use perm::{bruhat_leq, pattern_avoids, Permutation, Transposition, Word};
pub use polytope::BipPolytope;

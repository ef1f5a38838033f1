//! The two explicit counterexamples: the seven-vertex asymmetric graph `H` with its
//! pair-swap symmetry, and the family `Q(N)` whose symmetry-breaking control still
//! leaves a linear combination of automorphisms invariant.

mod config;
mod result_one;
mod result_two;

pub use config::{Constructions, NamedGraph, QFamily};
pub use result_one::{
    build_result_one, build_result_one_from, locate_in_graphs, locate_result_one_graph, s_operator,
    verify_result_one, LocatedLabeling, ResultOneBundle, ResultOneReport, SFormula,
};
pub use result_two::{
    build_result_two, build_result_two_with, q_graph, verify_result_two, DenseChecks,
    ResultTwoBundle, ResultTwoDense, ResultTwoReport,
};

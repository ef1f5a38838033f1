//! Universality obstructions for globally controlled qubit graphs.
//!
//! Builds the global-control Hamiltonians of a graph, computes automorphisms and the
//! full Hamiltonian commutant, flags symmetries not explained by automorphisms,
//! computes dynamical Lie algebra closures, decomposes the Hilbert space into
//! invariant subspaces and runs exhaustive graph censuses.
//!
//! Basis ordering: qubit 0 is the least significant bit of a computational basis index.

pub mod census;
pub mod cli;
pub mod commutant;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod lie;
pub mod linalg;
pub mod pauli;
pub mod subspace;

pub use error::{Error, Result};

//! Linear algebra over prime fields and the rationals.

pub mod exact;
pub mod matrix;
pub mod modp;
pub mod sparse;

pub use matrix::SparseMatrix;
pub use sparse::Echelon;

//! Hermitian adjacency matrices of oriented, mixed and signed graphs over
//! roots of unity.
//!
//! The crate certifies few-eigenvalue spectra (exactly over `Z[zeta_k]` for
//! `k in {3, 4, 6}`, by floating-point clustering otherwise), builds the
//! extremal graphs and skew-Hadamard/tournament correspondences, and runs
//! exhaustive orientation, mixed-orientation and signing searches.

pub mod certify;
pub mod constructions;
pub mod cyclotomic;
pub mod graph;
pub mod reproduce;
pub mod search;
pub mod spectra;

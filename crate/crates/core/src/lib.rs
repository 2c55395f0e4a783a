//! Flipping puzzles on simply-laced Coxeter graphs, and the matrix groups
//! over F₂ they generate.
//!
//! A configuration is a vector in F₂ⁿ (bit `i − 1` is vertex `sᵢ`, black = 1).
//! Selecting a black vertex flips its neighbours; this is the action of the
//! generator matrix `𝐬`. The crate enumerates or chains the group those
//! matrices generate, partitions F₂ⁿ into orbits, labels orbits in closed form
//! for the A, D and E families, and solves individual puzzles.

pub mod error;
pub mod exec;
pub mod flipping;
pub mod gf2;
pub mod graph;
pub mod group;
pub mod orbit;
pub mod solver;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use flipping::{apply_move, generator_matrix, legal_moves, GeneratorSet};
pub use gf2::{Gf2Matrix, Gf2Vector};
pub use graph::{CoxeterGraph, Family, GraphJson};
pub use group::MatrixGroup;
pub use orbit::{classify, OrbitLabel, OrbitPartition, SimpleBasis};
pub use solver::{equivalent, scramble, solve, MoveSequence, SolveReport};

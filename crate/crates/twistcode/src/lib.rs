//! Surface codes with twist defects built from graphs embedded on closed
//! 2-manifolds, described combinatorially as rotation systems.
//!
//! The pipeline: a [`rotation::RotationSystem`] describes an embedded graph;
//! [`checkerboard`] decides two-colorability (possibly with a defect);
//! [`surface`] assembles the qubit code (qubits on vertices, one stabilizer
//! per face, cyclically anticommuting Pauli lists around each vertex);
//! [`logical`] finds logical operators, exact distances, and the graph-based
//! distance bounds; [`families`] generates the standard code families
//! (square/rotated/cyclic toric, stellated, rotated surface, cyclic shift
//! codes); [`majorana`] carries the phase-exact Majorana form of the same
//! codes.

pub mod bits;
pub mod checkerboard;
pub mod derived;
pub mod f2;
pub mod facewalk;
pub mod families;
pub mod logical;
pub mod majorana;
pub mod pauli;
pub mod rotation;
pub mod surface;
pub mod tiling;

pub use rotation::{GraphSummary, OrientedRotationSystem, RotationSystem, ValidationReport};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid rotation system: {0}")]
    Validation(rotation::ValidationReport),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("vertex {vertex} has degree {degree}, need at least 3")]
    DegreeTooSmall { vertex: usize, degree: usize },
    #[error("graph is not checkerboardable with the given defect")]
    NotCheckerboardableWithDefect,
    #[error("graph is already checkerboardable; doubling needs a genuine defect")]
    AlreadyCheckerboardable,
    #[error("graph is not checkerboardable")]
    NotCheckerboardable,
    #[error("bad CAL specification: {0}")]
    CalSpec(String),
    #[error("stabilizers of faces {0} and {1} anticommute (broken CAL orientation)")]
    NonCommutingStabilizers(usize, usize),
    #[error("encoded-qubit count mismatch: topological formula {formula}, symplectic rank {rank}")]
    KMismatch { formula: i64, rank: i64 },
    #[error("enumeration budget exceeded")]
    BudgetExceeded,
    #[error("commutation pattern is inconsistent with the CAL")]
    InconsistentPattern,
    #[error("no homologically nontrivial path in the basis (K = 0?)")]
    NoNontrivialPath,
    #[error("bad family parameters: {0}")]
    BadFamilyParams(String),
    #[error("{0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Chains of torsion classes over representation-finite quiver algebras on small prime fields.
//!
//! Everything is exact: `F_p` linear algebra for modules, `Ratio<i64>` for phases and
//! big integers for Hall numbers. Objects of the module category are explicit [`Rep`]s; the
//! finitely many indecomposables live in an [`IndecTable`], and torsion classes are sets of
//! table indices.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chains;
pub mod chainspace;
pub mod classset;
pub mod error;
pub mod greenseq;
pub mod hall;
pub mod linalg;
pub mod repcat;
pub mod stability;
pub mod torsion;

pub use chains::{hn_filtration, phase_word, HnFiltration, Phase, PhaseWord, StepChain};
pub use classset::ClassSet;
pub use error::{Error, Result};
pub use linalg::{FpMatrix, Prime, Subspace};
pub use repcat::{IndecTable, ModClass, Morphism, Orientation, Quiver, Rep, SubRep};
pub use stability::StabilityForm;
pub use torsion::{enumerate_lattice, Lattice, Universe};

//! Symbolic dynamics toolkit centered on flow equivalence of shift spaces.

pub mod block;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod json;
pub mod matrix;
pub mod moves;
pub mod presentation;
pub mod sft;
pub mod sgap;
pub mod smith;
pub mod word;

pub use block::BlockMap;
pub use error::{Error, Result};
pub use graph::DirectedGraph;
pub use invariants::{bowen_franks, franks_decide, SignedBfGroup};
pub use matrix::IntMatrix;
pub use moves::{Move, MovePipeline, WordImage};
pub use presentation::LabeledGraph;
pub use sft::{EdgeShift, Sft};
pub use sgap::{FeVerdict, SGapSet, ShiftType};
pub use word::{Alphabet, PeriodicOrbit, Symbol, Word};

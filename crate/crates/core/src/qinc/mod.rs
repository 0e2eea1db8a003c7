//! Quantum increasing sequences: representations of `C(I_{k,n})`, their
//! completion to magic unitaries, and generation diagnostics.

mod completion;
mod growth;
mod rep;

pub use completion::{classical_rep, complete, displayed_completion, enumerate, free_pair_rep, s4_generation_check, standard_free_pair, S4Check};
pub use growth::{coefficient_growth, completed_family, generated_dimension, magic_family, GrowthCaps, GrowthReport};
pub use rep::{IncreasingSequenceRep, MagicReport, MagicUnitaryRep, SequenceReport};

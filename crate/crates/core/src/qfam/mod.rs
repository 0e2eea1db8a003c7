//! Quantum families of maps on a finite quantum space: the Wang relations,
//! the Podleś condition, state preservation and composition.

mod checks;
mod family;

pub use checks::{
    check_family, check_podles, check_unitary, check_wang1, check_wang2, check_wang3, check_wang4, podles_matrix,
    FamilyCheckReport, COMPOSITION_SLACK,
};
pub use family::{QuantumFamily, QuantumSpace};

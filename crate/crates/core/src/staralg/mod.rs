//! Finite-dimensional *-algebras with distinguished faithful states, their
//! φ-orthonormal structure data, and *-homomorphisms between them.

mod algebra;
mod hom;
mod ortho;
mod state;

pub use algebra::{AlgebraResiduals, Sparse, StarAlgebra};
pub use hom::{check_star_hom, HomReport, StarHom};
pub use ortho::{orthonormalize, OrthoBasisData};
pub use state::{check_state, StateFunctional, StateReport};

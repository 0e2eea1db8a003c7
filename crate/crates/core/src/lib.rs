//! Finite quantum symmetries in finite dimensions.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix `f64`, which is what the tolerances are tuned for.

#![allow(clippy::needless_range_loop)]

pub mod cnum;
pub mod error;
pub mod fqg;
pub mod grouporacle;
pub mod hopfimage;
pub mod io;
pub mod qfam;
pub mod qinc;
pub mod random;
pub mod scalar;
pub mod staralg;

pub use error::{Error, Result};
pub use scalar::{Real, C};

pub type Complex = C<f64>;
pub type CMatrix = cnum::Matrix<f64>;
pub type Subspace = cnum::Subspace<f64>;
pub type Tolerance = cnum::Tolerance<f64>;
pub type StarAlgebra = staralg::StarAlgebra<f64>;
pub type StateFunctional = staralg::StateFunctional<f64>;
pub type StarHom = staralg::StarHom<f64>;
pub type OrthoBasisData = staralg::OrthoBasisData<f64>;
pub type QuantumFamily = qfam::QuantumFamily<f64>;
pub type QuantumSpace = qfam::QuantumSpace<f64>;
pub type IncreasingSequenceRep = qinc::IncreasingSequenceRep<f64>;
pub type MagicUnitaryRep = qinc::MagicUnitaryRep<f64>;
pub type FiniteQuantumGroup = fqg::FiniteQuantumGroup<f64>;
pub type Functional = fqg::Functional<f64>;
pub type HopfImageResult = hopfimage::HopfImageResult<f64>;

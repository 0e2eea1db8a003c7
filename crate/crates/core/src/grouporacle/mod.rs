//! Classical finite groups by brute force: permutation closure, subgroup
//! lattices, quotients and isomorphism testing. Used as ground truth for the
//! quantum computations.

mod group;
mod perm;

pub use group::{closure, intersect_subgroups, is_isomorphic, FiniteGroup, Subgroup, DEFAULT_ORDER_BOUND};
pub use perm::Permutation;

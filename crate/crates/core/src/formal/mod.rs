//! Formal Q-linear combinations of arguments, and automorphism groups
//! acting on them.

mod group;
mod sum;

pub use group::{group_closure, orbit, Automorphism, DEFAULT_CLOSURE_BOUND};
pub use sum::{Degeneracy, DroppedTerm, FormalSum, JsonTerm, Specialization};

#[cfg(test)]
mod tests;

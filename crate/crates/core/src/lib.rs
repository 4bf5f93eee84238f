//! Exact and high-precision machinery for polylogarithm functional equations.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: rationals, factorization of rationals, seeded sampling.
//! * [`ratfunc`]: sparse multivariate polynomials and rational functions over Q,
//!   plus the expression grammar used by the catalog and the CLI.
//! * [`formal`]: formal Q-linear combinations of rational-function arguments,
//!   field automorphisms, group closure and orbits.
//! * [`numeric`]: arbitrary-precision complex numbers, `Li_m`, the one-valued
//!   `CL_m`, Bernoulli numbers, zeta values and polynomial roots.
//! * [`symbol`]: the symbolic kernel test for `[x] -> x^(m-2) ⊗ (x ∧ (1-x))`.
//! * [`proof`]: exact log-symbol model for the weight-4 family.
//! * [`catalog`]: named equations and structural checks.

pub mod catalog;
pub mod error;
pub mod exact;
pub mod formal;
pub mod numeric;
pub mod proof;
pub mod ratfunc;
pub mod report;
pub mod symbol;

pub use error::{Error, Result};

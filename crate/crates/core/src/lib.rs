//! Imaginarity measures for finite-dimensional density matrices.
//!
//! Four measures of how far a state is from its complex conjugate:
//! Umegaki (`M^V`), Tsallis (`M^T_q`), α-z-Rényi (`M^R_{α,z}`) and the
//! Tsallis relative operator entropy measure (`M^O_λ`, positive definite
//! states only), with the spectral calculus they rest on, state and channel
//! tooling, and a seeded verification harness.

pub mod channels;
pub mod cli;
pub mod error;
pub mod io;
pub mod matrixfn;
pub mod measures;
pub mod properties;
pub mod rng;
pub mod states;

pub use error::{Error, Result};

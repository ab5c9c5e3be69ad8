//! Exact local and global quantities for the `GL(2)` integral of an Eisenstein
//! series over a quadratic extension `L` against a cusp form over `Q`:
//! new-vector values in Waldspurger models, local zeta integrals as rational
//! functions in `q^{-s}`, archimedean weight-vector values and integrals, and
//! the global product formula.

pub mod archimedean;
pub mod arith;
pub mod cli;
pub mod error;
pub mod global;
pub mod local_data;
pub mod local_zeta;
pub mod sample;
pub mod verify;
pub mod waldspurger;

pub use error::{Error, Result};

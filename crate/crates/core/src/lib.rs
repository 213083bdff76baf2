//! Permutation statistics, Laguerre histories and the bijections between
//! them, Foata–Strehl style group actions, and exact power-series tools for
//! checking generating-function identities.

pub mod actions;
pub mod algebra;
pub mod bijections;
pub mod error;
pub mod harness;
pub mod paths;
pub mod perm;
pub mod stats;

pub use error::{Error, Result};
pub use perm::{Class, EnumGuard, Permutation, SignedPermutation};
pub use stats::{Convention, Stat, StatExpr};

//! Exact arithmetic: sparse polynomials over the integers, truncated power
//! series, continued fractions, gamma expansions and identity checks.

pub mod cfrac;
pub mod distribution;
pub mod gamma;
pub mod identity;
pub mod poly;
pub mod series;

pub use cfrac::CFSpec;
pub use distribution::{class_polynomial, Distribution};
pub use gamma::gamma_expand;
pub use poly::MPoly;
pub use series::{Mode, SeriesZ};

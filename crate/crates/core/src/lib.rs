//! Exact toolkit for Schröder-like lattice paths.
//!
//! The crate has two independent halves that are meant to be played against
//! each other:
//!
//! * brute force — [`path`] defines steps, paths and their statistics, and
//!   [`enumeration`] generates every path of a given order for the step
//!   families S1–S6, tabulates joint statistic distributions and runs the
//!   H-insertion construction;
//! * closed forms — [`series`] is a truncated formal-power-series ring over
//!   arbitrary-precision rationals, [`forms`] expands the known algebraic
//!   generating functions for these path families, and [`asymptotics`]
//!   isolates dominant singularities and evaluates growth constants.
//!
//! Every value is exact (`BigInt`/`BigRational`); no floating point is used
//! anywhere, so agreement between the two halves is meaningful to the last
//! coefficient.

pub mod asymptotics;
pub mod enumeration;
pub mod error;
pub mod forms;
pub mod path;
pub mod series;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

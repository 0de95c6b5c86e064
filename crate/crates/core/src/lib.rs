//! Exact computations for distance sets and sumsets over prime fields.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`], [`set`], [`rep`]: arithmetic in F_p, bitset subsets and
//!   their sumsets, representation counts.
//! - [`incidence`]: points, lines and planes with multiplicities, exact
//!   incidence counts and the explicit-constant incidence bounds.
//! - [`geometry`]: distance sets, distance histograms, bisector energy and
//!   isosceles triangle counts.
//! - [`harness`]: the sumset expression language, coverage verdicts, the
//!   incidence constructions behind the coverage results and the bound
//!   reports.
//! - [`experiment`]: seeded set generators, configuration-driven sweeps and
//!   CSV/JSON output.

pub mod error;
pub mod experiment;
pub mod field;
pub mod geometry;
pub mod harness;
pub mod incidence;
mod ntt;
pub mod rep;
pub mod set;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use rep::{rep_function, rep_function_fast, RepHistogram};
pub use set::{difference_set, doubling_stats, iterated_sumset, square_set, sumset, DoublingStats, FpSet};

pub use ntt::{cyclic_convolution, exact_limit};

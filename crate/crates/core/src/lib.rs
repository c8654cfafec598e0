//! Exact verification tools for list coloring of squares of subcubic planar
//! graphs: exhaustive list-assignment search, capped graph-polynomial
//! expansion, a configuration catalog, cycle-boundary classification and a
//! discharging auditor.

pub mod assignments;
pub mod boundary;
pub mod catalog;
pub mod colorer;
pub mod discharge;
pub mod error;
pub mod format;
pub mod graph;
pub mod nullstellensatz;
pub mod plane;

pub use error::{Error, Result};

//! Exact enumeration and statistics for planar Eulerian triangulations.
//!
//! The crate is organised around runnable examples; see `examples/` and
//! the README for one entry point per capability.

pub mod classical;
pub mod cli;
pub mod closed_form;
pub mod hull;
pub mod kernel;
pub mod oracle;
pub mod series;

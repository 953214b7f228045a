//! Experiment drivers, file formats and the command-line front end for the
//! `fdcran-core` rate engine.
//!
//! Monte Carlo work is spread over a rayon pool whose size can be capped
//! with the `FDCRAN_THREADS` environment variable; outputs are identical for
//! any worker count.

pub mod cli;
pub mod config_io;
pub mod error;
pub mod experiments;
pub mod manifest;
pub mod output;
pub mod parallel;
pub mod validation;

pub use fdcran_core as core;

//! Rate engine for a full-duplex C-RAN in which Poisson-distributed
//! multi-antenna remote radio heads (RRHs) serve one full-duplex user.
//!
//! The crate is `no_std` (it needs `alloc`). It covers the scenario
//! configuration, the point-process geometry, Rayleigh fading, the
//! MRC/MRT, ZF/MRT and sum-rate-optimal beamformers, RRH association and
//! SINR assembly, the per-trial Monte Carlo kernel, and quadrature-based
//! evaluation of the average rates.

#![no_std]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analytic;
pub mod association;
pub mod beamforming;
pub mod channel;
pub mod config;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod montecarlo;
pub mod quad;
pub mod rng;
pub mod special;
pub mod stats;

pub use config::{NormalizedConfig, SystemConfig};
pub use error::{Error, Result};

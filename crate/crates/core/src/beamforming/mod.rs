//! Transmit and receive beamformers at the serving RRHs.
//!
//! All vectors returned here are unit-norm. The sum-rate objective of a
//! serving pair is
//! `ln(1 + a1 |h† w_t|²) + ln(1 + a2 |w_r† g|² / (a3 |w_r† H w_t|² + ‖w_r‖²))`
//! with `a1 = P_b ℓ(x_q) / (P_u |h_li|² + 1)`, `a2 = P_u ℓ(x_p)` and
//! `a3 = P_b ℓ(x_p, x_q)`.

mod optimal;
pub mod oracle;

pub use optimal::{solve_f_alpha, solve_optimal_pair, InterferenceConstraint, OptimalSolveReport, ALPHA_GRID_POINTS};
pub use oracle::brute_force_pair;

use crate::error::{Error, Result};
use crate::linalg::{gain, inner, norm_sqr, project_out, unit, CMat, CVec};

/// Unit-norm transmit (`w_t`, at the DL RRH) and receive (`w_r`, at the UL RRH) vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamformerPair {
    pub w_t: CVec,
    pub w_r: CVec,
}

/// Maximal ratio transmission.
pub fn mrt(h: &CVec) -> Result<CVec> {
    unit(h).map_err(|_| Error::DegenerateChannel("zero DL channel"))
}

/// Maximal ratio combining.
pub fn mrc(g: &CVec) -> Result<CVec> {
    unit(g).map_err(|_| Error::DegenerateChannel("zero UL channel"))
}

/// Zero-forcing receiver: the unit vector closest to `g` that is orthogonal
/// to the interference direction `H_ud h`.
pub fn zf_receive(g: &CVec, h_ud: &CMat, h: &CVec) -> Result<CVec> {
    if g.len() < 2 {
        return Err(Error::Infeasible("zero-forcing needs at least two receive antennas"));
    }
    let v = h_ud * h;
    if norm_sqr(&v) == 0.0 {
        return Err(Error::DegenerateChannel("interference direction H_ud h is zero"));
    }
    let projected = project_out(g, &v);
    if norm_sqr(&projected) <= 1e-28 * norm_sqr(g) {
        return Err(Error::DegenerateChannel("UL channel parallel to interference direction"));
    }
    // second projection pass removes the rounding residue along v
    let w = project_out(&unit(&projected)?, &v);
    unit(&w)
}

/// Receiver maximizing the UL SINR for a fixed transmit vector:
/// `(a3 H w_t w_t† H† + I)^(-1) g`, normalized, evaluated through the rank-one
/// inverse.
pub fn mmse_receive(g: &CVec, h_ud: &CMat, w_t: &CVec, a3: f64) -> Result<CVec> {
    let v = h_ud * w_t;
    let coeff = inner(&v, g) * (a3 / (1.0 + a3 * norm_sqr(&v)));
    unit(&(g - v * coeff)).map_err(|_| Error::DegenerateChannel("zero UL channel"))
}

/// UL SINR `a2 |w_r† g|² / (a3 |w_r† H w_t|² + ‖w_r‖²)`.
pub fn ul_sinr(w_r: &CVec, g: &CVec, h_ud: &CMat, w_t: &CVec, a2: f64, a3: f64) -> f64 {
    let interference = if a3 == 0.0 { 0.0 } else { a3 * gain(w_r, &(h_ud * w_t)) };
    a2 * gain(w_r, g) / (interference + norm_sqr(w_r))
}

/// Sum rate (nats) of a serving pair.
pub fn pair_sum_rate(pair: &BeamformerPair, h: &CVec, g: &CVec, h_ud: &CMat, a1: f64, a2: f64, a3: f64) -> f64 {
    libm::log1p(a1 * gain(h, &pair.w_t)) + libm::log1p(ul_sinr(&pair.w_r, g, h_ud, &pair.w_t, a2, a3))
}

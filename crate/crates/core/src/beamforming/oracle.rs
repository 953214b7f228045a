//! Exhaustive grid search over both unit spheres for two-antenna RRHs.
//! Used to certify the optimal solver.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::BeamformerPair;
use crate::error::{Error, Result};
use crate::linalg::{gain, polar, CMat, CVec, C64};

/// Unit vectors `(cos θ, e^{iψ} sin θ)` on a `(density + 1) × density` grid of
/// `θ ∈ [0, π/2]`, `ψ ∈ [0, 2π)`. The grid for `2·density` contains this one.
pub fn sphere_grid(density: usize) -> Vec<CVec> {
    let mut out = Vec::with_capacity((density + 1) * density);
    for i in 0..=density {
        let theta = 0.5 * PI * i as f64 / density as f64;
        for j in 0..density {
            let psi = 2.0 * PI * j as f64 / density as f64;
            out.push(CVec::from_vec(alloc::vec![
                C64::new(libm::cos(theta), 0.0),
                polar(libm::sin(theta), psi),
            ]));
        }
    }
    out
}

/// Best sum rate over all grid pairs; two antennas only.
pub fn brute_force_pair(
    h: &CVec,
    g: &CVec,
    h_ud: &CMat,
    a1: f64,
    a2: f64,
    a3: f64,
    grid_density: usize,
) -> Result<(f64, BeamformerPair)> {
    if h.len() != 2 || g.len() != 2 || h_ud.nrows() != 2 || h_ud.ncols() != 2 {
        return Err(Error::Unsupported("brute-force search is implemented for two antennas only"));
    }
    if grid_density == 0 {
        return Err(Error::Unsupported("grid density must be positive"));
    }
    let grid = sphere_grid(grid_density);
    let receive_gain: Vec<f64> = grid.iter().map(|w| a2 * gain(w, g)).collect();
    let mut best = (f64::NEG_INFINITY, 0usize, 0usize);
    for (ti, w_t) in grid.iter().enumerate() {
        let dl = libm::log1p(a1 * gain(h, w_t));
        let v = h_ud * w_t;
        for (ri, w_r) in grid.iter().enumerate() {
            let s = dl + libm::log1p(receive_gain[ri] / (a3 * gain(w_r, &v) + 1.0));
            if s > best.0 {
                best = (s, ti, ri);
            }
        }
    }
    Ok((best.0, BeamformerPair { w_t: grid[best.1].clone(), w_r: grid[best.2].clone() }))
}

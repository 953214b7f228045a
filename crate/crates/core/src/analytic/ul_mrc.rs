//! SRA UL rate with MRC/MRT processing.
//!
//! The served UL RRH is the strongest of its field and the DL RRH the
//! strongest outside the interference region. For the strongest point of a
//! field with `Gamma(M)` marks, the mark is `Gamma(M + δ)` distributed and
//! independent of the winning value `X`, and its radius satisfies
//! `r² = G^δ E / Θ` with `Θ X^(−δ) = E ~ Exp(1)`. The relative angle of the DL
//! RRH is uniform on `(φ, π)`, and the beamformed inter-RRH coefficient is
//! `Exp(1)`, so given the geometry the rate has the closed form
//! `E ln(1 + a/(bY + 1))`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{best_link_rate, empty_dl_prob, theta_dl, theta_ul, AnalyticRate, FormulaId};
use crate::config::NormalizedConfig;
use crate::geometry::{disc_pair_distance_pdf, MIN_DISTANCE};
use crate::quad::{composite_rule, integrate, integrate_positive_log, Tolerance};
use crate::special::{gamma_ratio, ln_gamma, mean_log_exp_interference};

const ORDER: usize = 8;

/// Nodes and weights for `E[φ(E)]`, `E ~ Exp(1)`, in the variable `ln E`.
fn exponential_rule(panels: usize) -> Vec<(f64, f64)> {
    composite_rule(-20.0, 4.0, panels, ORDER)
        .into_iter()
        .map(|(x, w)| {
            let e = libm::exp(x);
            (e, w * e * libm::exp(-e))
        })
        .collect()
}

/// Nodes and weights for `E[φ(G)]`, `G ~ Gamma(shape, 1)`, in `ln G`.
fn gamma_rule(shape: f64, panels: usize) -> Vec<(f64, f64)> {
    let hi = libm::log(shape + 40.0 + 8.0 * libm::sqrt(shape));
    let lg = ln_gamma(shape);
    composite_rule(-28.0 / shape, hi, panels, ORDER)
        .into_iter()
        .map(|(x, w)| {
            let g = libm::exp(x);
            (g, w * libm::exp(shape * x - g - lg))
        })
        .collect()
}

/// Nodes and weights for `T = G^δ E`, `G ~ Gamma(M + δ)`, in `ln T`, with
/// density `f_T(t) = E_{Gamma(M)}[exp(−t G^(−δ))] / E_{Gamma(M)}[G^δ]`.
fn radius_rule(m: f64, delta: f64, panels: usize) -> Vec<(f64, f64)> {
    let norm = gamma_ratio(m + delta, m);
    let lg = ln_gamma(m);
    composite_rule(-20.0, libm::log(2000.0), panels, ORDER)
        .into_iter()
        .map(|(x, w)| {
            let t = libm::exp(x);
            let surv = integrate_positive_log(
                |g| libm::exp((m - 1.0) * libm::log(g) - g - lg - t * libm::pow(g, -delta)),
                0.0,
                Tolerance::new(1e-15, 1e-12),
            );
            (t, w * t * surv.value / norm)
        })
        .collect()
}

fn angle_rule(phi: f64, panels: usize) -> Vec<(f64, f64)> {
    composite_rule(phi, PI, panels, ORDER)
        .into_iter()
        .map(|(x, w)| (libm::cos(x), w / (PI - phi)))
        .collect()
}

/// Interference-limited part: the DL set is non-empty.
fn interfered_rate(cfg: &NormalizedConfig, panels: [usize; 4]) -> f64 {
    let m = cfg.antennas as f64;
    let delta = cfg.delta;
    let th_u = theta_ul(cfg, m);
    let th_d = theta_dl(cfg, m);
    let e_rule = exponential_rule(panels[0]);
    let g_rule = gamma_rule(m + delta, panels[1]);
    let t_rule = radius_rule(m, delta, panels[2]);
    let a_rule = angle_rule(cfg.phi, panels[3]);
    let rq: Vec<(f64, f64)> = t_rule.iter().map(|&(t, w)| (libm::sqrt(t / th_d), w)).collect();

    let mut total = 0.0;
    for &(e, we) in &e_rule {
        let signal = cfg.p_u * libm::pow(th_u / e, 1.0 / delta);
        for &(g, wg) in &g_rule {
            let rp = libm::sqrt(libm::pow(g, delta) * e / th_u);
            let mut acc = 0.0;
            for &(r, wr) in &rq {
                let mut by_angle = 0.0;
                for &(c, wa) in &a_rule {
                    let d2 = (rp * rp + r * r - 2.0 * rp * r * c).max(MIN_DISTANCE * MIN_DISTANCE);
                    let b = cfg.p_b * libm::pow(d2, -cfg.mu / 2.0);
                    by_angle += wa * mean_log_exp_interference(signal, b);
                }
                acc += wr * by_angle;
            }
            total += we * wg * acc;
        }
    }
    total
}

/// SRA UL rate with MRC/MRT, accounting for how the serving pair is selected.
/// The error estimate compares against a grid with half the panels.
pub fn ul_rate_mrc(cfg: &NormalizedConfig) -> AnalyticRate {
    let m = cfg.antennas as f64;
    let th_u = theta_ul(cfg, m);
    if !(cfg.p_u > 0.0 && th_u > 0.0) {
        return AnalyticRate::new(0.0, 0.0, FormulaId::P2Ul);
    }
    let clean = best_link_rate(cfg.p_u, th_u, cfg.delta);
    let e = empty_dl_prob(cfg);
    if !(cfg.p_b > 0.0) || theta_dl(cfg, m) <= 0.0 || e >= 1.0 {
        return AnalyticRate::new(clean.value, clean.abs_error, FormulaId::P2Ul);
    }
    let coarse = interfered_rate(cfg, [6, 4, 8, 1]);
    let fine = interfered_rate(cfg, [12, 8, 16, 1]);
    AnalyticRate::new(
        e * clean.value + (1.0 - e) * fine,
        e * clean.abs_error + (1.0 - e) * libm::fabs(fine - coarse),
        FormulaId::P2Ul,
    )
}

/// SRA UL rate with MRC/MRT under the simplified model in which the
/// inter-RRH distance is that of two independent uniform points on the
/// disc and the interference is `Σ_i Z_i` with independent product terms.
pub fn ul_rate_mrc_uniform_pair(cfg: &NormalizedConfig) -> AnalyticRate {
    let m = cfg.antennas as f64;
    let th_u = theta_ul(cfg, m);
    if !(cfg.p_u > 0.0 && th_u > 0.0) {
        return AnalyticRate::new(0.0, 0.0, FormulaId::P2Ul);
    }
    let delta = cfg.delta;
    let k = m - 1.0;
    // E_V[(1 + sV)^(−1)], V ~ Beta(1, M − 1)
    let z_mgf = |s: f64| -> f64 {
        if cfg.antennas == 1 {
            return 1.0 / (1.0 + s);
        }
        integrate(|v| k * libm::pow(1.0 - v, k - 1.0) / (1.0 + s * v), 0.0, 1.0, Tolerance::new(1e-12, 1e-10)).value
    };
    let radius = cfg.radius;
    let interference_mgf = |z: f64| -> f64 {
        integrate(
            |r| {
                let s = z * cfg.p_b * libm::pow(r.max(MIN_DISTANCE), -cfg.mu);
                disc_pair_distance_pdf(r, radius) * libm::pow(z_mgf(s), m)
            },
            0.0,
            2.0 * radius,
            Tolerance::new(1e-9, 1e-8),
        )
        .value
    };
    let center = -(libm::log(cfg.p_u) + libm::log(th_u) / delta);
    let q = integrate_positive_log(
        |z| {
            // 1 − E[e^(−z P_u X)] for the strongest UL gain
            let signal = integrate_positive_log(
                |u| libm::exp(-u) * -libm::expm1(-th_u * libm::pow(z * cfg.p_u / u, delta)),
                0.0,
                Tolerance::new(1e-10, 1e-10),
            )
            .value;
            libm::exp(-z) / z * interference_mgf(z) * signal
        },
        center,
        Tolerance::new(1e-6, 1e-6),
    );
    AnalyticRate::new(q.value, q.abs_error, FormulaId::P2Ul)
}

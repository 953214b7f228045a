//! Average rates from the stochastic-geometry analysis, evaluated by
//! quadrature over probabilistic representations of each expression.
//!
//! The strongest of a Poisson field of RRHs with marks `ℓ(x)·G`,
//! `G ~ Gamma(M, 1)`, has cdf `exp(−Θ t^(−δ))`. Writing `Θ X^(−δ) = E` with
//! `E ~ Exp(1)` turns most expectations over `X` into smooth one-dimensional
//! integrals.

mod ul_mrc;

use core::f64::consts::PI;

use crate::config::NormalizedConfig;
use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_positive_log, Quadrature, Tolerance};
use crate::special::{gamma_ratio, mean_log_exp_interference, scaled_e1};

pub use ul_mrc::{ul_rate_mrc, ul_rate_mrc_uniform_pair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaId {
    Lemma1,
    Lemma2,
    P1Ul,
    P1Dl,
    P2Ul,
    P3Dl,
    EmptyProb,
}

impl FormulaId {
    pub const fn as_str(self) -> &'static str {
        match self {
            FormulaId::Lemma1 => "LEMMA1",
            FormulaId::Lemma2 => "LEMMA2",
            FormulaId::P1Ul => "P1_UL",
            FormulaId::P1Dl => "P1_DL",
            FormulaId::P2Ul => "P2_UL",
            FormulaId::P3Dl => "P3_DL",
            FormulaId::EmptyProb => "EMPTY_PROB",
        }
    }
}

impl core::fmt::Display for FormulaId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticRate {
    /// Nats, or a probability for the cdf and empty-set entries.
    pub value: f64,
    pub abs_error: f64,
    pub formula_id: FormulaId,
}

impl AnalyticRate {
    fn new(value: f64, abs_error: f64, formula_id: FormulaId) -> Self {
        Self { value: value.max(0.0), abs_error: abs_error.abs(), formula_id }
    }
}

const RATE_TOL: Tolerance = Tolerance::new(1e-8, 1e-9);
const DL_OUTER_TOL: Tolerance = Tolerance::new(1e-7, 1e-8);
const DL_INNER_TOL: Tolerance = Tolerance::new(1e-10, 1e-10);

/// `ln(1 + e^x)` without overflow.
pub(crate) fn ln1p_exp(x: f64) -> f64 {
    if x > 36.0 {
        x + libm::exp(-x)
    } else {
        libm::log1p(libm::exp(x))
    }
}

/// `p·λ·(π − φ)·Γ(M + δ)/Γ(M)`: scale of the strongest-gain distribution.
pub fn theta(p_eff: f64, lambda: f64, phi_eff: f64, m_eff: f64, delta: f64) -> f64 {
    p_eff * lambda * (PI - phi_eff) * gamma_ratio(m_eff + delta, m_eff)
}

/// `Θ` of the DL RRHs outside the interference region.
pub fn theta_dl(cfg: &NormalizedConfig, m_eff: f64) -> f64 {
    theta(cfg.p_d, cfg.lambda, cfg.phi, m_eff, cfg.delta)
}

/// `Θ` of the UL RRHs (no region applies).
pub fn theta_ul(cfg: &NormalizedConfig, m_eff: f64) -> f64 {
    theta(1.0 - cfg.p_d, cfg.lambda, 0.0, m_eff, cfg.delta)
}

/// `P(X ≤ t) = exp(−Θ t^(−δ))`; zero for `t ≤ 0`.
pub fn cdf_best_gain(t: f64, theta: f64, delta: f64) -> f64 {
    if !(t > 0.0) {
        return 0.0;
    }
    libm::exp(-theta * libm::pow(t, -delta))
}

/// cdf of `Z = U·V` with `U ~ Exp(1)`, `V ~ Beta(1, M − 1)` (`V = 1` for `M = 1`).
pub fn cdf_product_zi(t: f64, m: usize) -> f64 {
    if !(t > 0.0) {
        return 0.0;
    }
    if m <= 1 {
        return -libm::expm1(-t);
    }
    let k = (m - 1) as f64;
    // E_V[e^(−t/V)] with density (M−1)(1−v)^(M−2)
    let tail = integrate(
        |v| if v <= 0.0 { 0.0 } else { k * libm::pow(1.0 - v, k - 1.0) * libm::exp(-t / v) },
        0.0,
        1.0,
        Tolerance::new(1e-12, 1e-12),
    );
    (1.0 - tail.value).clamp(0.0, 1.0)
}

/// Probability that no DL RRH lies outside the interference region.
pub fn empty_dl_prob(cfg: &NormalizedConfig) -> f64 {
    libm::exp(-cfg.lambda * cfg.p_d * (PI - cfg.phi) * cfg.radius * cfg.radius)
}

/// `E[ln(1 + power·X)]` for the strongest of a field with scale `theta`,
/// as `∫ (1 − F(s / power)) / (1 + s) ds`.
pub fn best_link_rate(power: f64, theta: f64, delta: f64) -> Quadrature {
    if !(power > 0.0 && theta > 0.0) {
        return Quadrature { value: 0.0, abs_error: 0.0, evaluations: 0 };
    }
    let center = libm::log(power) + libm::log(theta) / delta;
    integrate_positive_log(
        |s| -libm::expm1(-theta * libm::pow(s / power, -delta)) / (1.0 + s),
        center,
        RATE_TOL,
    )
}

/// Same quantity as [`best_link_rate`] through `X = (Θ/E)^(1/δ)`, `E ~ Exp(1)`.
pub fn best_link_rate_exponential(power: f64, theta: f64, delta: f64) -> Quadrature {
    if !(power > 0.0 && theta > 0.0) {
        return Quadrature { value: 0.0, abs_error: 0.0, evaluations: 0 };
    }
    integrate_positive_log(
        |e| libm::exp(-e) * ln1p_exp(libm::log(power) + (libm::log(theta) - libm::log(e)) / delta),
        0.0,
        RATE_TOL,
    )
}

/// SRA UL rate with ZF receive: `e·R_M + (1 − e)·R_(M−1)`, `e` the empty-DL probability.
pub fn ul_rate_zf(cfg: &NormalizedConfig) -> Result<AnalyticRate> {
    if cfg.antennas < 2 {
        return Err(Error::Infeasible("zero-forcing needs at least two receive antennas"));
    }
    let m = cfg.antennas as f64;
    let e = empty_dl_prob(cfg);
    let full = best_link_rate(cfg.p_u, theta_ul(cfg, m), cfg.delta);
    let reduced = best_link_rate(cfg.p_u, theta_ul(cfg, m - 1.0), cfg.delta);
    Ok(AnalyticRate::new(
        e * full.value + (1.0 - e) * reduced.value,
        e * full.abs_error + (1.0 - e) * reduced.abs_error,
        FormulaId::P1Ul,
    ))
}

/// SRA DL rate (ZF/MRT and MRC/MRT alike), from
/// `E ln(1 + A/(B + 1)) = ∫ e^(−z)/z · E[e^(−zB)] · (1 − E[e^(−zA)]) dz`.
pub fn dl_rate_sra(cfg: &NormalizedConfig) -> AnalyticRate {
    let th = theta_dl(cfg, cfg.antennas as f64);
    if !(cfg.p_b > 0.0 && th > 0.0) {
        return AnalyticRate::new(0.0, 0.0, FormulaId::P1Dl);
    }
    let b = cfg.p_u * cfg.sigma_li;
    let delta = cfg.delta;
    let mut inner_error: f64 = 0.0;
    let center = -(libm::log(cfg.p_b) + libm::log(th) / delta);
    let outer = integrate_positive_log(
        |z| {
            // 1 − E[e^(−z P_b X)] = P(Exp(1) < z P_b X)
            let inner = integrate_positive_log(
                |u| libm::exp(-u) * -libm::expm1(-th * libm::pow(z * cfg.p_b / u, delta)),
                0.0,
                DL_INNER_TOL,
            );
            inner_error = inner_error.max(inner.abs_error);
            libm::exp(-z) / z / (1.0 + b * z) * inner.value
        },
        center,
        DL_OUTER_TOL,
    );
    let keep = 1.0 - empty_dl_prob(cfg);
    AnalyticRate::new(keep * outer.value, keep * (outer.abs_error + inner_error), FormulaId::P1Dl)
}

/// [`dl_rate_sra`] through the closed-form loopback average
/// `E ln(1 + a/(bY + 1))`, one integral over `E ~ Exp(1)`.
pub fn dl_rate_sra_direct(cfg: &NormalizedConfig) -> AnalyticRate {
    let th = theta_dl(cfg, cfg.antennas as f64);
    if !(cfg.p_b > 0.0 && th > 0.0) {
        return AnalyticRate::new(0.0, 0.0, FormulaId::P1Dl);
    }
    let b = cfg.p_u * cfg.sigma_li;
    let q = integrate_positive_log(
        |e| {
            let a = cfg.p_b * libm::pow(th / e, 1.0 / cfg.delta);
            if a.is_finite() {
                libm::exp(-e) * mean_log_exp_interference(a, b)
            } else {
                0.0
            }
        },
        0.0,
        RATE_TOL,
    );
    let keep = 1.0 - empty_dl_prob(cfg);
    AnalyticRate::new(keep * q.value, keep * q.abs_error, FormulaId::P1Dl)
}

/// `∫_0^R (1 − (1 + c r^(−μ))^(−M)) r dr`.
fn shot_noise_exponent(c: f64, mu: f64, m: f64, radius: f64) -> Quadrature {
    let f = |r: f64| {
        if r <= 0.0 {
            return 0.0;
        }
        -libm::expm1(-m * libm::log1p(c * libm::pow(r, -mu))) * r
    };
    let tol = Tolerance::new(1e-12 * radius * radius, 1e-11);
    let knee = libm::pow(c, 1.0 / mu);
    if knee > 0.0 && knee < radius {
        let a = integrate(f, 0.0, knee, tol);
        let b = integrate(f, knee, radius, tol);
        Quadrature { value: a.value + b.value, abs_error: a.abs_error + b.abs_error, evaluations: a.evaluations + b.evaluations }
    } else {
        integrate(f, 0.0, radius, tol)
    }
}

/// ARA DL rate with the aggregate MRT signal of all DL RRHs outside the
/// interference region of a finite disc.
pub fn dl_rate_ara(cfg: &NormalizedConfig) -> AnalyticRate {
    let density = cfg.p_d * cfg.lambda * (PI - cfg.phi);
    if !(cfg.p_b > 0.0 && density > 0.0) {
        return AnalyticRate::new(0.0, 0.0, FormulaId::P3Dl);
    }
    let b = cfg.p_u * cfg.sigma_li;
    let m = cfg.antennas as f64;
    let mut inner_error: f64 = 0.0;
    // typical aggregate: nearest-RRH scale
    let center = -libm::log(cfg.p_b * libm::pow(density, cfg.mu / 2.0));
    let q = integrate_positive_log(
        |z| {
            let s = shot_noise_exponent(z * cfg.p_b, cfg.mu, m, cfg.radius);
            inner_error = inner_error.max(s.abs_error * 2.0 * density);
            let one_minus_mgf = -libm::expm1(-2.0 * density * s.value);
            libm::exp(-z) / z / (1.0 + b * z) * one_minus_mgf
        },
        center,
        DL_OUTER_TOL,
    );
    AnalyticRate::new(q.value, q.abs_error + inner_error, FormulaId::P3Dl)
}

/// First-order (sparse network) ARA DL rate without loopback:
/// `2 p λ (π − φ) ∫_0^R r E[ln(1 + P_b r^(−μ) G)] dr`, single-antenna fading.
pub fn dl_rate_ara_sparse_limit(cfg: &NormalizedConfig) -> f64 {
    let density = cfg.p_d * cfg.lambda * (PI - cfg.phi);
    let q = integrate(
        |r| {
            if r <= 0.0 {
                return 0.0;
            }
            r * scaled_e1(libm::pow(r, cfg.mu) / cfg.p_b)
        },
        0.0,
        cfg.radius,
        Tolerance::new(1e-14, 1e-12),
    );
    2.0 * density * q.value
}

//! Scenario configuration and unit conversion.
//!
//! Powers are given in dBm and converted to linear ratios against the noise
//! power, so that after [`SystemConfig::normalize`] the noise variance is 1.

use core::f64::consts::PI;

use crate::error::{Error, Result};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// All scenario parameters as read from a configuration file.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct SystemConfig {
    /// RRH density (RRH/m²).
    pub lambda: f64,
    /// Disc radius (m).
    #[cfg_attr(feature = "serde", serde(rename = "R"))]
    pub radius: f64,
    /// Path-loss exponent.
    pub mu: f64,
    /// Probability that an RRH is assigned to the downlink.
    pub p_d: f64,
    /// Interference-region half-angle (rad).
    pub phi: f64,
    /// Antennas per RRH.
    #[cfg_attr(feature = "serde", serde(rename = "M"))]
    pub antennas: usize,
    #[cfg_attr(feature = "serde", serde(rename = "P_b_dbm"))]
    pub p_b_dbm: f64,
    #[cfg_attr(feature = "serde", serde(rename = "P_u_dbm"))]
    pub p_u_dbm: f64,
    /// Residual loopback-interference power E|h_LI|² (dBm).
    pub sigma_li_dbm: f64,
    pub noise_dbm: f64,
    /// Half-duplex downlink time fraction.
    pub tau: f64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self {
            lambda: 1e-3,
            radius: 150.0,
            mu: 3.0,
            p_d: 0.5,
            phi: PI / 3.0,
            antennas: 3,
            p_b_dbm: 23.0,
            p_u_dbm: 23.0,
            sigma_li_dbm: -40.0,
            noise_dbm: -60.0,
            tau: 0.5,
            trials: 20_000,
            seed: 1,
        }
    }
}

/// Path-loss exponent in the form used by the max-gain distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Delta {
    pub value: f64,
    /// `value = m / n` with `gcd(m, n) = 1`, when such a pair with `n <= 64` exists.
    pub ratio: Option<(u32, u32)>,
}

/// Configuration in noise-normalized linear units.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedConfig {
    pub lambda: f64,
    pub radius: f64,
    pub mu: f64,
    pub delta: f64,
    pub p_d: f64,
    pub phi: f64,
    pub antennas: usize,
    pub p_b: f64,
    pub p_u: f64,
    pub sigma_li: f64,
    pub tau: f64,
}

/// dBm (or dB) value relative to `reference_dbm` as a linear ratio.
pub fn db_to_linear(value_dbm: f64, reference_dbm: f64) -> f64 {
    libm::pow(10.0, (value_dbm - reference_dbm) / 10.0)
}

pub fn linear_to_db(ratio: f64, reference_dbm: f64) -> f64 {
    10.0 * libm::log10(ratio) + reference_dbm
}

fn check(ok: bool, field: &'static str, reason: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidConfig { field, reason })
    }
}

impl SystemConfig {
    pub fn validate(&self) -> Result<()> {
        check(self.mu.is_finite() && self.mu > 2.0, "mu", "must be finite and > 2")?;
        check((0.0..=1.0).contains(&self.p_d), "p_d", "must lie in [0, 1]")?;
        check((0.0..=PI).contains(&self.phi), "phi", "must lie in [0, pi]")?;
        check((0.0..=1.0).contains(&self.tau), "tau", "must lie in [0, 1]")?;
        check(self.antennas >= 1, "M", "must be at least 1")?;
        check(self.lambda.is_finite() && self.lambda >= 0.0, "lambda", "must be finite and >= 0")?;
        check(self.radius.is_finite() && self.radius > 0.0, "R", "must be finite and > 0")?;
        check(self.p_b_dbm.is_finite(), "P_b_dbm", "must be finite")?;
        check(self.p_u_dbm.is_finite(), "P_u_dbm", "must be finite")?;
        check(self.sigma_li_dbm.is_finite(), "sigma_li_dbm", "must be finite")?;
        check(self.noise_dbm.is_finite(), "noise_dbm", "must be finite")?;
        check(self.trials >= 1, "trials", "must be at least 1")?;
        Ok(())
    }

    pub fn delta(&self) -> Result<Delta> {
        delta(self.mu)
    }

    pub fn normalize(&self) -> Result<NormalizedConfig> {
        self.validate()?;
        Ok(NormalizedConfig {
            lambda: self.lambda,
            radius: self.radius,
            mu: self.mu,
            delta: 2.0 / self.mu,
            p_d: self.p_d,
            phi: self.phi,
            antennas: self.antennas,
            p_b: db_to_linear(self.p_b_dbm, self.noise_dbm),
            p_u: db_to_linear(self.p_u_dbm, self.noise_dbm),
            sigma_li: db_to_linear(self.sigma_li_dbm, self.noise_dbm),
            tau: self.tau,
        })
    }
}

/// `2 / mu`, rationalized when the value is a ratio of small integers.
pub fn delta(mu: f64) -> Result<Delta> {
    check(mu.is_finite() && mu > 2.0, "mu", "must be finite and > 2")?;
    let value = 2.0 / mu;
    let ratio = (1..=64u32).find_map(|n| {
        let m = libm::round(value * n as f64);
        if m >= 1.0 && libm::fabs(m / n as f64 - value) <= 1e-12 {
            let m = m as u32;
            (gcd(m, n) == 1).then_some((m, n))
        } else {
            None
        }
    });
    Ok(Delta { value, ratio })
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        libm::fabs(a - b) / libm::fabs(b)
    }

    #[test]
    fn normalization_examples() {
        let mut c = SystemConfig {
            p_b_dbm: 23.0,
            noise_dbm: 23.0,
            ..SystemConfig::default()
        };
        assert_eq!(c.normalize().unwrap().p_b, 1.0);
        c.p_u_dbm = 10.0;
        c.noise_dbm = -60.0;
        assert!(rel(c.normalize().unwrap().p_u, 1e7) < 1e-14);
        c.sigma_li_dbm = -40.0;
        assert!(rel(c.normalize().unwrap().sigma_li, 100.0) < 1e-14);
    }

    #[test]
    fn delta_examples() {
        let d = delta(3.0).unwrap();
        assert!(libm::fabs(d.value - 2.0 / 3.0) < 1e-15);
        assert_eq!(d.ratio, Some((2, 3)));
        assert_eq!(delta(4.0).unwrap().ratio, Some((1, 2)));
        let d = delta(2.5).unwrap();
        assert!(libm::fabs(d.value - 0.8) < 1e-15);
        assert_eq!(d.ratio, Some((4, 5)));
        assert!(delta(2.0).is_err());
        assert!(delta(1.5).is_err());
        assert_eq!(delta(core::f64::consts::E).unwrap().ratio, None);
    }

    #[test]
    fn validation_names_field() {
        let bad = SystemConfig {
            p_d: 1.5,
            ..SystemConfig::default()
        };
        assert_eq!(
            bad.normalize(),
            Err(Error::InvalidConfig {
                field: "p_d",
                reason: "must lie in [0, 1]"
            })
        );
        let bad = SystemConfig {
            mu: 2.0,
            ..SystemConfig::default()
        };
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig { field: "mu", .. })));
        let bad = SystemConfig {
            phi: 4.0,
            ..SystemConfig::default()
        };
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig { field: "phi", .. })));
        let bad = SystemConfig {
            antennas: 0,
            ..SystemConfig::default()
        };
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig { field: "M", .. })));
    }

    proptest::proptest! {
        #[test]
        fn ten_db_is_a_decade(p in -100.0f64..60.0, n in -120.0f64..0.0) {
            let a = db_to_linear(p, n);
            let b = db_to_linear(p + 10.0, n);
            proptest::prop_assert!(rel(b, 10.0 * a) < 1e-12);
            proptest::prop_assert!(db_to_linear(p + 0.5, n) > a);
        }

        #[test]
        fn db_round_trip(p in -100.0f64..60.0, n in -120.0f64..0.0) {
            let back = linear_to_db(db_to_linear(p, n), n);
            proptest::prop_assert!(libm::fabs(back - p) <= 1e-12 * libm::fabs(p).max(1.0));
        }
    }
}

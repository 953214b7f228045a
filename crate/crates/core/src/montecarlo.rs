//! Per-trial Monte Carlo kernel and deterministic aggregation.
//!
//! Trial `t` of a run with seed `s` draws everything from
//! [`TrialStreams::new(s, t)`](crate::rng::TrialStreams), so a trial can be
//! evaluated on any worker and every scheme/design combination sees the
//! same layout and fading (common random numbers).

use alloc::vec::Vec;

use crate::association::{hd_rates, hd_rates_sra, instantaneous_rates, Design, Direction, Duplex, Rates, Scheme, Trial};
use crate::channel::{draw_channels, ChannelDraw};
use crate::config::NormalizedConfig;
use crate::error::{Error, Result};
use crate::geometry::{sample_realization, NetworkRealization};
use crate::rng::{TrialStreams, MAIN_STREAM};
use crate::stats::mean_and_std_error;

/// One scheme/design/duplex combination. Half-duplex combinations ignore
/// `design` and use MRC/MRT.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Combo {
    pub scheme: Scheme,
    pub design: Design,
    pub duplex: Duplex,
}

impl Combo {
    pub const fn full(scheme: Scheme, design: Design) -> Self {
        Self { scheme, design, duplex: Duplex::Full }
    }

    pub const fn half(scheme: Scheme) -> Self {
        Self { scheme, design: Design::MrcMrt, duplex: Duplex::Half }
    }

    pub fn validate(&self) -> Result<()> {
        if self.duplex == Duplex::Full && self.scheme == Scheme::Ara && self.design == Design::Optimal {
            return Err(Error::Unsupported("the optimal design is defined for SRA only"));
        }
        Ok(())
    }
}

/// The seven curves of the rate-region experiment.
pub const RATE_REGION_COMBOS: [Combo; 7] = [
    Combo::full(Scheme::Sra, Design::Optimal),
    Combo::full(Scheme::Sra, Design::ZfMrt),
    Combo::full(Scheme::Sra, Design::MrcMrt),
    Combo::full(Scheme::Ara, Design::ZfMrt),
    Combo::full(Scheme::Ara, Design::MrcMrt),
    Combo::half(Scheme::Ara),
    Combo::half(Scheme::Sra),
];

/// The three SRA designs compared in the interference-region sweep.
pub const PHI_SWEEP_COMBOS: [Combo; 3] = [
    Combo::full(Scheme::Sra, Design::Optimal),
    Combo::full(Scheme::Sra, Design::ZfMrt),
    Combo::full(Scheme::Sra, Design::MrcMrt),
];

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RateEstimate {
    /// Nats.
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
    pub direction: Direction,
}

/// UL, DL and sum estimates of one combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComboEstimate {
    pub combo: Combo,
    pub ul: RateEstimate,
    pub dl: RateEstimate,
    pub sum: RateEstimate,
}

/// Layout and fading of trial `trial`.
pub fn draw_trial(cfg: &NormalizedConfig, seed: u64, trial: u64) -> (NetworkRealization, ChannelDraw) {
    let streams = TrialStreams::new(seed, trial);
    let mut rng = streams.stream(MAIN_STREAM);
    let realization = sample_realization(cfg, &mut rng);
    let channels = draw_channels(&realization, cfg, &streams, &mut rng);
    (realization, channels)
}

pub fn combo_rates(trial: &Trial, combo: Combo) -> Result<Rates> {
    match (combo.duplex, combo.scheme) {
        (Duplex::Full, scheme) => instantaneous_rates(trial, scheme, combo.design),
        (Duplex::Half, Scheme::Ara) => Ok(hd_rates(trial)),
        (Duplex::Half, Scheme::Sra) => Ok(hd_rates_sra(trial)),
    }
}

/// Rates of every combination on one shared trial.
pub fn run_trial(cfg: &NormalizedConfig, seed: u64, trial: u64, combos: &[Combo]) -> Result<Vec<Rates>> {
    let (realization, channels) = draw_trial(cfg, seed, trial);
    let view = Trial::new(&realization, &channels, cfg);
    combos.iter().map(|&c| combo_rates(&view, c)).collect()
}

/// Aggregates per-trial rates (in trial order) into estimates.
pub fn summarize(combo: Combo, samples: &[Rates]) -> ComboEstimate {
    let estimate = |direction: Direction, f: &dyn Fn(&Rates) -> f64| {
        let xs: Vec<f64> = samples.iter().map(f).collect();
        let (mean, std_error) = mean_and_std_error(&xs);
        RateEstimate { mean, std_error, trials: samples.len(), direction }
    };
    ComboEstimate {
        combo,
        ul: estimate(Direction::Ul, &|r| r.ul),
        dl: estimate(Direction::Dl, &|r| r.dl),
        sum: estimate(Direction::Sum, &|r| r.sum()),
    }
}

/// Splits a trial-major table `[trial][combo]` into per-combination estimates.
pub fn summarize_table(combos: &[Combo], table: &[Vec<Rates>]) -> Vec<ComboEstimate> {
    combos
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            let column: Vec<Rates> = table.iter().map(|row| row[k]).collect();
            summarize(c, &column)
        })
        .collect()
}

/// Single-threaded estimate over trials `0..trials`.
pub fn estimate(cfg: &NormalizedConfig, combos: &[Combo], trials: usize, seed: u64) -> Result<Vec<ComboEstimate>> {
    if trials == 0 {
        return Err(Error::InvalidConfig { field: "trials", reason: "must be >= 1" });
    }
    for c in combos {
        c.validate()?;
    }
    let table = (0..trials as u64).map(|t| run_trial(cfg, seed, t, combos)).collect::<Result<Vec<_>>>()?;
    Ok(summarize_table(combos, &table))
}

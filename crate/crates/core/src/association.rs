//! RRH association (ARA and SRA), SINR assembly and instantaneous rates.
//!
//! All powers are noise-normalized, so every receiver noise term is `‖w‖² = 1`.
//! A direction without any serving RRH contributes rate 0 to the trial.

use alloc::vec::Vec;

use crate::beamforming::{mrc, mrt, solve_optimal_pair, zf_receive, BeamformerPair};
use crate::channel::ChannelDraw;
use crate::config::NormalizedConfig;
use crate::error::{Error, Result};
use crate::geometry::{path_loss, selection_region, NetworkRealization, Point};
use crate::linalg::{gain, norm_sqr, CVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Scheme {
    /// All RRH association.
    Ara,
    /// Single best RRH association.
    Sra,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Design {
    MrcMrt,
    ZfMrt,
    Optimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Direction {
    Ul,
    Dl,
    Sum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Duplex {
    Full,
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrBreakdown {
    pub signal: f64,
    pub interference: f64,
    pub sinr: f64,
    pub scheme: Scheme,
    pub direction: Direction,
}

impl SinrBreakdown {
    pub fn new(signal: f64, interference: f64, scheme: Scheme, direction: Direction) -> Self {
        Self {
            signal,
            interference,
            sinr: signal / (interference + 1.0),
            scheme,
            direction,
        }
    }

    fn silent(scheme: Scheme, direction: Direction) -> Self {
        Self::new(0.0, 0.0, scheme, direction)
    }

    pub fn rate(&self) -> f64 {
        libm::log1p(self.sinr)
    }
}

/// Serving RRHs of an SRA trial.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Selection {
    pub ul_rrh: Option<usize>,
    pub dl_rrh: Option<usize>,
    pub dl_set_empty: bool,
    pub ul_set_empty: bool,
    /// DL RRHs outside the interference region of `ul_rrh` (all DL RRHs when no UL RRH exists).
    pub region: Vec<usize>,
}

/// Per-direction rates of one trial, in nats.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Rates {
    pub ul: f64,
    pub dl: f64,
}

impl Rates {
    pub fn sum(&self) -> f64 {
        self.ul + self.dl
    }
}

/// Borrowed view of one trial: layout, fading and parameters.
#[derive(Debug, Clone, Copy)]
pub struct Trial<'a> {
    pub realization: &'a NetworkRealization,
    pub channels: &'a ChannelDraw,
    pub cfg: &'a NormalizedConfig,
}

impl<'a> Trial<'a> {
    pub fn new(realization: &'a NetworkRealization, channels: &'a ChannelDraw, cfg: &'a NormalizedConfig) -> Self {
        Self { realization, channels, cfg }
    }

    fn ul_point(&self, j: usize) -> Point {
        self.realization.ul_points[j]
    }

    fn dl_point(&self, i: usize) -> Point {
        self.realization.dl_points[i]
    }

    /// `ℓ(x_j)` for UL RRH `j`.
    pub fn ul_loss(&self, j: usize) -> f64 {
        path_loss(self.ul_point(j), Point::ORIGIN, self.cfg.mu)
    }

    pub fn dl_loss(&self, i: usize) -> f64 {
        path_loss(self.dl_point(i), Point::ORIGIN, self.cfg.mu)
    }

    /// `ℓ(x_j, x_i)` between UL RRH `j` and DL RRH `i`.
    pub fn inter_loss(&self, j: usize, i: usize) -> f64 {
        path_loss(self.ul_point(j), self.dl_point(i), self.cfg.mu)
    }

    /// `1 + P_u |h_li|²`, the DL interference-plus-noise level.
    fn dl_denominator(&self) -> f64 {
        self.cfg.p_u * self.channels.li_gain() + 1.0
    }

    fn region_of(&self, anchor: Option<usize>) -> Result<Vec<usize>> {
        match anchor {
            Some(p) => selection_region(&self.realization.dl_points, self.ul_point(p), self.cfg.phi),
            None => Ok((0..self.realization.dl_points.len()).collect()),
        }
    }

    /// UL RRH with the largest `ℓ ‖g‖²`.
    pub fn best_ul(&self) -> Option<usize> {
        argmax((0..self.realization.ul_points.len()).map(|j| self.ul_loss(j) * norm_sqr(&self.channels.g[j])))
            .map(|(j, _)| j)
    }

    /// DL RRH in `candidates` with the largest `ℓ ‖h‖²`.
    pub fn best_dl(&self, candidates: &[usize]) -> Option<usize> {
        argmax(candidates.iter().map(|&i| self.dl_loss(i) * norm_sqr(&self.channels.h[i]))).map(|(k, _)| candidates[k])
    }
}

/// Index and value of the largest element; ties keep the first.
fn argmax<I: Iterator<Item = f64>>(values: I) -> Option<(usize, f64)> {
    values.enumerate().fold(None, |best, (i, v)| match best {
        Some((_, b)) if b >= v => best,
        _ => Some((i, v)),
    })
}

fn selection(trial: &Trial, ul: Option<usize>) -> Result<Selection> {
    let region = trial.region_of(ul)?;
    let dl = trial.best_dl(&region);
    Ok(Selection {
        ul_rrh: ul,
        dl_rrh: dl,
        dl_set_empty: dl.is_none(),
        ul_set_empty: trial.realization.ul_points.is_empty(),
        region,
    })
}

/// SRA selection with MRC/MRT metrics: the UL RRH maximizes `ℓ ‖g‖²`, then
/// the DL RRH maximizes `ℓ ‖h‖²` outside the interference region of that UL RRH.
pub fn select_sra(trial: &Trial) -> Result<Selection> {
    selection(trial, trial.best_ul())
}

/// SRA selection with ZF receive metrics: every UL RRH is scored by
/// `ℓ |w_zf† g|²` against the DL RRH it would be paired with.
pub fn select_sra_zf(trial: &Trial) -> Result<Selection> {
    let ch = trial.channels;
    let mut best: Option<(f64, Selection)> = None;
    for j in 0..trial.realization.ul_points.len() {
        let sel = selection(trial, Some(j))?;
        let effective = match sel.dl_rrh {
            None => norm_sqr(&ch.g[j]),
            Some(q) => match zf_receive(&ch.g[j], &ch.inter_rrh(j, q), &ch.h[q]) {
                Ok(w) => gain(&w, &ch.g[j]),
                Err(Error::DegenerateChannel(_)) => 0.0,
                Err(e) => return Err(e),
            },
        };
        let metric = trial.ul_loss(j) * effective;
        if best.as_ref().is_none_or(|(b, _)| metric > *b) {
            best = Some((metric, sel));
        }
    }
    match best {
        Some((_, sel)) => Ok(sel),
        None => selection(trial, None),
    }
}

/// Selection rule used by each SRA design.
pub fn select_for_design(trial: &Trial, design: Design) -> Result<Selection> {
    match design {
        Design::MrcMrt | Design::Optimal => select_sra(trial),
        Design::ZfMrt => select_sra_zf(trial),
    }
}

/// SRA DL SINR for the transmit vector `w_t` at the selected DL RRH.
pub fn sinr_dl_sra(trial: &Trial, sel: &Selection, w_t: Option<&CVec>) -> SinrBreakdown {
    let interference = trial.cfg.p_u * trial.channels.li_gain();
    match (sel.dl_rrh, w_t) {
        (Some(q), Some(w)) => {
            let signal = trial.cfg.p_b * trial.dl_loss(q) * gain(&trial.channels.h[q], w);
            SinrBreakdown::new(signal, interference, Scheme::Sra, Direction::Dl)
        }
        _ => SinrBreakdown::silent(Scheme::Sra, Direction::Dl),
    }
}

/// SRA UL SINR for the serving pair; without a DL RRH there is no inter-RRH term.
pub fn sinr_ul_sra(trial: &Trial, sel: &Selection, pair: Option<&BeamformerPair>, w_r_alone: Option<&CVec>) -> SinrBreakdown {
    let Some(p) = sel.ul_rrh else {
        return SinrBreakdown::silent(Scheme::Sra, Direction::Ul);
    };
    let ch = trial.channels;
    let (w_r, interference) = match (sel.dl_rrh, pair) {
        (Some(q), Some(pair)) => {
            let h_ud = ch.inter_rrh(p, q);
            let i = trial.cfg.p_b * trial.inter_loss(p, q) * gain(&pair.w_r, &(h_ud * &pair.w_t));
            (&pair.w_r, i)
        }
        _ => match w_r_alone.or(pair.map(|x| &x.w_r)) {
            Some(w) => (w, 0.0),
            None => return SinrBreakdown::silent(Scheme::Sra, Direction::Ul),
        },
    };
    let signal = trial.cfg.p_u * trial.ul_loss(p) * gain(w_r, &ch.g[p]);
    SinrBreakdown::new(signal, interference, Scheme::Sra, Direction::Ul)
}

/// SINRs of an SRA trial under `design`, together with the selection and the beamformers used.
pub fn sra_breakdown(trial: &Trial, design: Design) -> Result<(Selection, SinrBreakdown, SinrBreakdown)> {
    let ch = trial.channels;
    let cfg = trial.cfg;
    match design {
        Design::MrcMrt | Design::ZfMrt => {
            let sel = select_for_design(trial, design)?;
            let w_t = sel.dl_rrh.map(|q| mrt(&ch.h[q])).transpose()?;
            let w_r = match (sel.ul_rrh, sel.dl_rrh) {
                (Some(p), Some(q)) if design == Design::ZfMrt => Some(zf_receive(&ch.g[p], &ch.inter_rrh(p, q), &ch.h[q])?),
                (Some(p), _) => Some(mrc(&ch.g[p])?),
                (None, _) => None,
            };
            let dl = sinr_dl_sra(trial, &sel, w_t.as_ref());
            let pair = match (&w_t, &w_r) {
                (Some(t), Some(r)) => Some(BeamformerPair { w_t: t.clone(), w_r: r.clone() }),
                _ => None,
            };
            let ul = sinr_ul_sra(trial, &sel, pair.as_ref(), w_r.as_ref());
            Ok((sel, ul, dl))
        }
        Design::Optimal => {
            // candidates: the MRC-rule and ZF-rule selections, keep the better optimized pair
            let mut best: Option<(f64, Selection, SinrBreakdown, SinrBreakdown)> = None;
            let mut tried: Vec<(Option<usize>, Option<usize>)> = Vec::new();
            for sel in [select_sra(trial)?, select_sra_zf(trial)?] {
                if tried.contains(&(sel.ul_rrh, sel.dl_rrh)) {
                    continue;
                }
                tried.push((sel.ul_rrh, sel.dl_rrh));
                let (ul, dl) = match (sel.ul_rrh, sel.dl_rrh) {
                    (Some(p), Some(q)) => {
                        let a1 = cfg.p_b * trial.dl_loss(q) / trial.dl_denominator();
                        let a2 = cfg.p_u * trial.ul_loss(p);
                        let a3 = cfg.p_b * trial.inter_loss(p, q);
                        let report = solve_optimal_pair(&ch.h[q], &ch.g[p], &ch.inter_rrh(p, q), a1, a2, a3)?;
                        let dl = sinr_dl_sra(trial, &sel, Some(&report.pair.w_t));
                        (sinr_ul_sra(trial, &sel, Some(&report.pair), None), dl)
                    }
                    (p, q) => {
                        let w_t = q.map(|q| mrt(&ch.h[q])).transpose()?;
                        let w_r = p.map(|p| mrc(&ch.g[p])).transpose()?;
                        (sinr_ul_sra(trial, &sel, None, w_r.as_ref()), sinr_dl_sra(trial, &sel, w_t.as_ref()))
                    }
                };
                let total = ul.rate() + dl.rate();
                if best.as_ref().is_none_or(|b| total > b.0) {
                    best = Some((total, sel, ul, dl));
                }
            }
            let (_, sel, ul, dl) = best.expect("at least one candidate");
            Ok((sel, ul, dl))
        }
    }
}

/// DL RRHs active under ARA: those outside the interference region anchored
/// on the strongest UL RRH (all of them when there is no UL RRH).
pub fn ara_active_set(trial: &Trial) -> Result<Vec<usize>> {
    trial.region_of(trial.best_ul())
}

/// ARA DL SINR with MRT at every active DL RRH.
pub fn sinr_dl_ara(trial: &Trial, active: &[usize]) -> SinrBreakdown {
    let signal: f64 = active
        .iter()
        .map(|&i| trial.cfg.p_b * trial.dl_loss(i) * norm_sqr(&trial.channels.h[i]))
        .sum();
    let signal = if active.is_empty() { 0.0 } else { signal };
    SinrBreakdown::new(signal, trial.cfg.p_u * trial.channels.li_gain(), Scheme::Ara, Direction::Dl)
}

/// ARA UL SINR: combined signal over all UL RRHs against the aggregate
/// inter-RRH interference from every active DL RRH. With ZF each UL RRH
/// cancels only its nearest active DL RRH.
pub fn sinr_ul_ara(trial: &Trial, active: &[usize], design: Design) -> Result<SinrBreakdown> {
    if design == Design::Optimal {
        return Err(Error::Unsupported("the optimal design is defined for SRA only"));
    }
    let ch = trial.channels;
    let cfg = trial.cfg;
    let w_t: Vec<CVec> = active.iter().map(|&i| mrt(&ch.h[i])).collect::<Result<_>>()?;
    let (mut signal, mut interference) = (0.0, 0.0);
    for j in 0..trial.realization.ul_points.len() {
        let nearest = active.iter().copied().min_by(|&a, &b| {
            trial.ul_point(j).distance(trial.dl_point(a)).total_cmp(&trial.ul_point(j).distance(trial.dl_point(b)))
        });
        let w_r = match (design, nearest) {
            (Design::ZfMrt, Some(i)) => zf_receive(&ch.g[j], &ch.inter_rrh(j, i), &ch.h[i])?,
            _ => mrc(&ch.g[j])?,
        };
        signal += cfg.p_u * trial.ul_loss(j) * gain(&w_r, &ch.g[j]);
        for (k, &i) in active.iter().enumerate() {
            interference += cfg.p_b * trial.inter_loss(j, i) * gain(&w_r, &(ch.inter_rrh(j, i) * &w_t[k]));
        }
    }
    Ok(SinrBreakdown::new(signal, interference, Scheme::Ara, Direction::Ul))
}

/// Full-duplex rates of one trial.
pub fn instantaneous_rates(trial: &Trial, scheme: Scheme, design: Design) -> Result<Rates> {
    let (ul, dl) = match scheme {
        Scheme::Sra => {
            let (_, ul, dl) = sra_breakdown(trial, design)?;
            (ul, dl)
        }
        Scheme::Ara => {
            if design == Design::Optimal {
                return Err(Error::Unsupported("the optimal design is defined for SRA only"));
            }
            let active = ara_active_set(trial)?;
            (sinr_ul_ara(trial, &active, design)?, sinr_dl_ara(trial, &active))
        }
    };
    Ok(Rates { ul: ul.rate(), dl: dl.rate() })
}

/// Half-duplex SNRs with all RRHs serving (MRC/MRT, no interference).
pub fn hd_snr_ara(trial: &Trial) -> (f64, f64) {
    let ch = trial.channels;
    let snr_u = (0..trial.realization.ul_points.len())
        .map(|j| trial.cfg.p_u * trial.ul_loss(j) * norm_sqr(&ch.g[j]))
        .sum();
    let snr_d = (0..trial.realization.dl_points.len())
        .map(|i| trial.cfg.p_b * trial.dl_loss(i) * norm_sqr(&ch.h[i]))
        .sum();
    (snr_u, snr_d)
}

/// Half-duplex rates, `((1 − τ) ln(1 + SNR_u), τ ln(1 + SNR_d))`.
pub fn hd_rates(trial: &Trial) -> Rates {
    let (u, d) = hd_snr_ara(trial);
    time_share(trial.cfg.tau, u, d)
}

/// Half-duplex rates with the single strongest UL and DL RRH; no interference region applies.
pub fn hd_rates_sra(trial: &Trial) -> Rates {
    let ch = trial.channels;
    let all: Vec<usize> = (0..trial.realization.dl_points.len()).collect();
    let u = trial.best_ul().map_or(0.0, |j| trial.cfg.p_u * trial.ul_loss(j) * norm_sqr(&ch.g[j]));
    let d = trial.best_dl(&all).map_or(0.0, |i| trial.cfg.p_b * trial.dl_loss(i) * norm_sqr(&ch.h[i]));
    time_share(trial.cfg.tau, u, d)
}

fn time_share(tau: f64, snr_u: f64, snr_d: f64) -> Rates {
    Rates {
        ul: (1.0 - tau) * libm::log1p(snr_u),
        dl: tau * libm::log1p(snr_d),
    }
}

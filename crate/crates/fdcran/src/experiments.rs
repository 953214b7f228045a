//! Parameter sweeps built on the trial-parallel estimator.

use std::f64::consts::PI;

use fdcran_core::association::{Design, Duplex, Scheme};
use fdcran_core::montecarlo::{summarize_table, Combo, ComboEstimate, PHI_SWEEP_COMBOS, RATE_REGION_COMBOS};
use fdcran_core::{NormalizedConfig, SystemConfig};

use crate::error::AppResult;
use crate::parallel::{estimate, rate_table};

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    PD,
    Phi,
}

impl SweepAxis {
    pub fn column(self) -> &'static str {
        match self {
            SweepAxis::PD => "p_d",
            SweepAxis::Phi => "phi",
        }
    }
}

/// One output line: a combination evaluated at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRow {
    pub x: f64,
    pub estimate: ComboEstimate,
}

/// `n` evenly spaced points on `[a, b]` including both ends (`[a]` when `n == 1`).
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect(),
    }
}

pub fn single(cfg: &SystemConfig, combo: Combo) -> AppResult<RateRow> {
    let n = cfg.normalize()?;
    let est = estimate(&n, &[combo], cfg.trials, cfg.seed)?;
    Ok(RateRow { x: cfg.p_d, estimate: est[0] })
}

fn sweep(cfg: &SystemConfig, combos: &[Combo], axis: SweepAxis, grid: &[f64]) -> AppResult<Vec<RateRow>> {
    let mut rows = Vec::with_capacity(grid.len() * combos.len());
    for &x in grid {
        let mut c = cfg.clone();
        match axis {
            SweepAxis::PD => c.p_d = x,
            SweepAxis::Phi => c.phi = x,
        }
        let n = c.normalize()?;
        for est in estimate(&n, combos, c.trials, c.seed)? {
            rows.push(RateRow { x, estimate: est });
        }
    }
    Ok(rows)
}

/// All seven scheme/design/duplex curves over `points` values of `p_d` in `[0, 1]`.
pub fn rate_region(cfg: &SystemConfig, points: usize) -> AppResult<Vec<RateRow>> {
    sweep(cfg, &RATE_REGION_COMBOS, SweepAxis::PD, &linspace(0.0, 1.0, points))
}

/// SRA sum rates of the three designs over `phi ∈ [from, to]`.
pub fn phi_sweep(cfg: &SystemConfig, from: f64, to: f64, steps: usize) -> AppResult<Vec<RateRow>> {
    sweep(cfg, &PHI_SWEEP_COMBOS, SweepAxis::Phi, &linspace(from, to, steps))
}

/// Default interference-region grid: 16 points on `[0, π]`.
pub fn default_phi_grid() -> Vec<f64> {
    linspace(0.0, PI, 16)
}

/// Full-duplex over half-duplex SRA sum-rate ratio of one design.
#[derive(Debug, Clone, PartialEq)]
pub struct GainReport {
    pub design: Design,
    /// Largest ratio over the interior grid points.
    pub gain: f64,
    pub p_d: f64,
    /// `(p_d, FD sum, HD sum)` at every interior grid point.
    pub curve: Vec<(f64, f64, f64)>,
}

/// FD-SRA / HD-SRA sum-rate ratio per design, maximized over the interior of
/// a `points`-point `p_d` grid. At `p_d ∈ {0, 1}` one direction is idle in
/// both modes and the ratio is trivially `1/τ` or `1/(1 − τ)`, so the
/// endpoints are excluded.
pub fn fd_hd_gain(cfg: &SystemConfig, designs: &[Design], points: usize) -> AppResult<Vec<GainReport>> {
    let mut combos: Vec<Combo> = designs.iter().map(|&d| Combo::full(Scheme::Sra, d)).collect();
    combos.push(Combo::half(Scheme::Sra));
    let grid = linspace(0.0, 1.0, points);
    let mut curves: Vec<Vec<(f64, f64, f64)>> = vec![Vec::new(); designs.len()];
    for &p in grid.iter().filter(|&&p| p > 0.0 && p < 1.0) {
        let mut c = cfg.clone();
        c.p_d = p;
        let n: NormalizedConfig = c.normalize()?;
        let est = summarize_table(&combos, &rate_table(&n, &combos, c.trials, c.seed)?);
        let hd = est.last().expect("half-duplex column").sum.mean;
        for (k, e) in est[..designs.len()].iter().enumerate() {
            curves[k].push((p, e.sum.mean, hd));
        }
    }
    Ok(designs
        .iter()
        .zip(curves)
        .map(|(&design, curve)| {
            let (p_d, gain) = curve
                .iter()
                .map(|&(p, fd, hd)| (p, if hd > 0.0 { fd / hd } else { f64::NAN }))
                .fold((f64::NAN, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
            GainReport { design, gain, p_d, curve }
        })
        .collect())
}

pub fn scheme_label(s: Scheme) -> &'static str {
    match s {
        Scheme::Ara => "ARA",
        Scheme::Sra => "SRA",
    }
}

pub fn design_label(d: Design) -> &'static str {
    match d {
        Design::MrcMrt => "MRC_MRT",
        Design::ZfMrt => "ZF_MRT",
        Design::Optimal => "OPTIMAL",
    }
}

pub fn duplex_label(d: Duplex) -> &'static str {
    match d {
        Duplex::Full => "FD",
        Duplex::Half => "HD",
    }
}

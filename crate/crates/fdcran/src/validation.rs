//! Analytic expressions against matched Monte Carlo estimates.

use fdcran_core::analytic::{
    cdf_best_gain, cdf_product_zi, dl_rate_ara, dl_rate_sra, empty_dl_prob, theta_dl, ul_rate_mrc, ul_rate_zf, FormulaId,
};
use fdcran_core::association::{select_sra, Design, Scheme, Trial};
use fdcran_core::linalg::{gain, norm_sqr};
use fdcran_core::montecarlo::{combo_rates, draw_trial, Combo};
use fdcran_core::stats::mean_and_std_error;
use fdcran_core::{beamforming::mrc, SystemConfig};

use crate::error::AppResult;
use crate::parallel::map_trials;

/// Relative tolerance of each comparison; the band is `max(rel·|analytic|, k·σ_MC)`.
pub fn default_rel_tolerance(id: FormulaId) -> f64 {
    match id {
        FormulaId::P2Ul => 0.05,
        FormulaId::P3Dl => 0.03,
        _ => 0.02,
    }
}

pub const DEFAULT_SIGMAS: f64 = 3.0;

/// Overrides for the acceptance band.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ToleranceOverride {
    pub rel: Option<f64>,
    pub sigmas: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRow {
    pub formula_id: FormulaId,
    pub analytic_value: f64,
    pub mc_value: f64,
    pub mc_std_error: f64,
    pub abs_gap: f64,
    pub pass: bool,
}

impl ValidationRow {
    fn new(formula_id: FormulaId, analytic_value: f64, mc_value: f64, mc_std_error: f64, tol: ToleranceOverride) -> Self {
        let rel = tol.rel.unwrap_or_else(|| default_rel_tolerance(formula_id));
        let k = tol.sigmas.unwrap_or(DEFAULT_SIGMAS);
        let abs_gap = (analytic_value - mc_value).abs();
        let band = (rel * analytic_value.abs()).max(k * mc_std_error);
        Self { formula_id, analytic_value, mc_value, mc_std_error, abs_gap, pass: abs_gap <= band }
    }

    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

/// Per-trial quantities feeding the comparisons.
#[derive(Debug, Clone, Copy, Default)]
struct TrialSample {
    zf_ul: f64,
    zf_dl: f64,
    mrc_ul: f64,
    ara_dl: f64,
    best_gain_below: bool,
    product_below: Option<bool>,
    dl_empty: bool,
}

/// Median of the best-gain law, where its cdf equals 1/2.
fn best_gain_median(theta: f64, delta: f64) -> f64 {
    (theta / std::f64::consts::LN_2).powf(1.0 / delta)
}

fn proportion(hits: impl Iterator<Item = bool>) -> (f64, f64) {
    let xs: Vec<f64> = hits.map(|b| if b { 1.0 } else { 0.0 }).collect();
    mean_and_std_error(&xs)
}

/// Runs every comparison with `cfg.trials` trials.
pub fn validate(cfg: &SystemConfig, tol: ToleranceOverride) -> AppResult<Vec<ValidationRow>> {
    let n = cfg.normalize()?;
    let m = n.antennas;
    let th = theta_dl(&n, m as f64);
    let t_median = best_gain_median(th, n.delta);
    let t_product = 1.0 / m as f64;

    let zf = Combo::full(Scheme::Sra, Design::ZfMrt);
    let mr = Combo::full(Scheme::Sra, Design::MrcMrt);
    let ara = Combo::full(Scheme::Ara, Design::MrcMrt);
    let samples = map_trials(cfg.trials, |t| {
        let (real, ch) = draw_trial(&n, cfg.seed, t);
        let trial = Trial::new(&real, &ch, &n);
        let rz = combo_rates(&trial, zf)?;
        let rm = combo_rates(&trial, mr)?;
        let ra = combo_rates(&trial, ara)?;
        let sel = select_sra(&trial)?;
        let best = sel.region.iter().map(|&i| trial.dl_loss(i) * norm_sqr(&ch.h[i])).fold(0.0, f64::max);
        let product_below = match (sel.ul_rrh, sel.dl_rrh) {
            (Some(p), Some(q)) => {
                let w_r = mrc(&ch.g[p])?;
                let col = ch.inter_rrh(p, q).column(0).into_owned();
                let z = gain(&w_r, &col) * ch.h[q][0].norm_sqr() / norm_sqr(&ch.h[q]);
                Some(z <= t_product)
            }
            _ => None,
        };
        Ok(TrialSample {
            zf_ul: rz.ul,
            zf_dl: rz.dl,
            mrc_ul: rm.ul,
            ara_dl: ra.dl,
            best_gain_below: best <= t_median,
            product_below,
            dl_empty: sel.dl_set_empty,
        })
    })?;

    let stat = |f: fn(&TrialSample) -> f64| mean_and_std_error(&samples.iter().map(f).collect::<Vec<_>>());
    let mut rows = Vec::new();

    let (lemma1, _) = proportion(samples.iter().map(|s| s.best_gain_below));
    let p1 = cdf_best_gain(t_median, th, n.delta);
    let sigma1 = (p1 * (1.0 - p1) / samples.len() as f64).sqrt();
    rows.push(ValidationRow::new(FormulaId::Lemma1, p1, lemma1, sigma1, tol));

    let products: Vec<bool> = samples.iter().filter_map(|s| s.product_below).collect();
    let p2 = cdf_product_zi(t_product, m);
    let (lemma2, _) = proportion(products.iter().copied());
    let sigma2 = (p2 * (1.0 - p2) / products.len().max(1) as f64).sqrt();
    rows.push(ValidationRow::new(FormulaId::Lemma2, p2, lemma2, sigma2, tol));

    let (v, s) = stat(|x| x.zf_ul);
    rows.push(ValidationRow::new(FormulaId::P1Ul, ul_rate_zf(&n)?.value, v, s, tol));
    let (v, s) = stat(|x| x.zf_dl);
    rows.push(ValidationRow::new(FormulaId::P1Dl, dl_rate_sra(&n).value, v, s, tol));
    let (v, s) = stat(|x| x.mrc_ul);
    rows.push(ValidationRow::new(FormulaId::P2Ul, ul_rate_mrc(&n).value, v, s, tol));
    let (v, s) = stat(|x| x.ara_dl);
    rows.push(ValidationRow::new(FormulaId::P3Dl, dl_rate_ara(&n).value, v, s, tol));

    let pe = empty_dl_prob(&n);
    let (empty, _) = proportion(samples.iter().map(|s| s.dl_empty));
    let sigma_e = (pe * (1.0 - pe) / samples.len() as f64).sqrt();
    rows.push(ValidationRow::new(FormulaId::EmptyProb, pe, empty, sigma_e, tol));
    Ok(rows)
}

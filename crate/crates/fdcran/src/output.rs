//! CSV serialization. Numbers are written with 9 significant digits.

use std::io::Write;

use crate::experiments::{design_label, duplex_label, scheme_label, RateRow, SweepAxis};
use crate::validation::ValidationRow;
use crate::error::AppResult;

/// Rate unit of the written columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RateUnit {
    #[default]
    Nats,
    Bits,
}

impl RateUnit {
    fn scale(self) -> f64 {
        match self {
            RateUnit::Nats => 1.0,
            RateUnit::Bits => 1.0 / std::f64::consts::LN_2,
        }
    }
}

pub fn number(x: f64) -> String {
    // Adding 0.0 folds -0.0 into +0.0.
    format!("{:.8e}", x + 0.0)
}

pub fn write_rates<W: Write>(out: W, axis: SweepAxis, rows: &[RateRow], unit: RateUnit) -> AppResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["scheme", "design", "duplex", axis.column(), "rate_ul", "rate_dl", "rate_sum", "std_error", "trials"])?;
    let k = unit.scale();
    for r in rows {
        let e = &r.estimate;
        w.write_record([
            scheme_label(e.combo.scheme).to_string(),
            design_label(e.combo.design).to_string(),
            duplex_label(e.combo.duplex).to_string(),
            number(r.x),
            number(e.ul.mean * k),
            number(e.dl.mean * k),
            number(e.sum.mean * k),
            number(e.sum.std_error * k),
            e.sum.trials.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Probabilities are written unscaled; rates follow `unit`.
pub fn write_validation<W: Write>(out: W, rows: &[ValidationRow], unit: RateUnit) -> AppResult<()> {
    use fdcran_core::analytic::FormulaId::*;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["formula_id", "analytic_value", "mc_value", "mc_std_error", "abs_gap", "verdict"])?;
    for r in rows {
        let k = match r.formula_id {
            Lemma1 | Lemma2 | EmptyProb => 1.0,
            _ => unit.scale(),
        };
        w.write_record([
            r.formula_id.as_str().to_string(),
            number(r.analytic_value * k),
            number(r.mc_value * k),
            number(r.mc_std_error * k),
            number(r.abs_gap * k),
            r.verdict().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

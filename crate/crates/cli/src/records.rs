//! Result records. CSV columns follow struct field order; JSON uses the field names.

use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::CliResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub dim: u32,
    pub ell: u32,
    pub v0: f64,
    pub nmesh: usize,
    pub h: f64,
    pub n: usize,
    pub energy: f64,
    pub mean_r: f64,
    pub sigma_r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalRecord {
    pub dim: u32,
    pub ell: u32,
    pub n: usize,
    /// `pencil` for a single mesh, `extrapolated` for the large-`h` fit.
    pub method: String,
    pub nmesh: Option<usize>,
    pub h: Option<f64>,
    pub v0c: f64,
    pub tau: Option<f64>,
    pub residual: Option<f64>,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRecord {
    pub dim: u32,
    pub ell: u32,
    pub n: usize,
    pub kind: String,
    pub v0c: f64,
    pub coeff_1: f64,
    pub coeff_2: Option<f64>,
    pub coeff_3: Option<f64>,
    pub residual: f64,
    pub hf_slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnsatzRecord {
    pub dim: u32,
    pub ell: u32,
    pub v0: f64,
    pub terms: usize,
    pub root: usize,
    pub term: usize,
    pub a: f64,
    pub b: f64,
    pub s: f64,
    pub coeff: f64,
    pub energy: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeuteronRecord {
    pub lambda: f64,
    pub method: String,
    pub terms: Option<usize>,
    pub energy_mev: f64,
    pub v0_effective: f64,
    pub term: Option<usize>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub s: Option<f64>,
    pub coeff: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QDotRecord {
    pub lambda: f64,
    pub depth: f64,
    pub energy: f64,
    pub inv_r12: f64,
    pub inv_r12_tabulated: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub c: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub chi_a: f64,
    pub chi_b: f64,
    pub chi_s: f64,
    pub doubling_shift: Option<f64>,
    pub flagged: bool,
}

/// One compared cell of a reproduced table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub table: String,
    /// Acceptance criterion the cell belongs to; 0 for informational cells.
    pub criterion: u8,
    pub row: String,
    pub quantity: String,
    pub reference: Option<f64>,
    pub computed: f64,
    pub abs_diff: Option<f64>,
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl ReportRow {
    /// `|computed - reference| <= tolerance`.
    pub fn within(
        table: &str,
        criterion: u8,
        row: impl Into<String>,
        quantity: &str,
        reference: f64,
        computed: f64,
        tolerance: f64,
    ) -> Self {
        let diff = (computed - reference).abs();
        ReportRow {
            table: table.into(),
            criterion,
            row: row.into(),
            quantity: quantity.into(),
            reference: Some(reference),
            computed,
            abs_diff: Some(diff),
            tolerance: Some(tolerance),
            pass: diff <= tolerance,
        }
    }

    /// `computed <= reference + tolerance` (improvements always pass).
    pub fn at_most(
        table: &str,
        criterion: u8,
        row: impl Into<String>,
        quantity: &str,
        reference: f64,
        computed: f64,
        tolerance: f64,
    ) -> Self {
        let mut r = Self::within(table, criterion, row, quantity, reference, computed, tolerance);
        r.pass = computed <= reference + tolerance;
        r
    }

    /// A derived check without a printed counterpart.
    pub fn check(table: &str, criterion: u8, row: impl Into<String>, quantity: &str, computed: f64, pass: bool) -> Self {
        ReportRow {
            table: table.into(),
            criterion,
            row: row.into(),
            quantity: quantity.into(),
            reference: None,
            computed,
            abs_diff: None,
            tolerance: None,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub nmesh: usize,
    pub h: f64,
    pub v0c: f64,
    /// Fitted `h → ∞` limit of this curve.
    pub beta0: f64,
}

pub fn encode<T: Serialize>(rows: &[T], format: Format) -> CliResult<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            w.flush().map_err(|e| crate::error::CliError::Format(e.to_string()))?;
            w.into_inner().map_err(|e| crate::error::CliError::Format(e.to_string()))
        }
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(rows)?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_columns_follow_field_order() {
        let r = SolveRecord { dim: 3, ell: 0, v0: 100.0, nmesh: 300, h: 1.0, n: 1, energy: -79.7388, mean_r: 0.314, sigma_r: 0.135 };
        let text = String::from_utf8(encode(&[r], Format::Csv).unwrap()).unwrap();
        assert_eq!(text.lines().next().unwrap(), "dim,ell,v0,nmesh,h,n,energy,mean_r,sigma_r");
    }

    #[test]
    fn one_sided_comparison_accepts_improvement() {
        assert!(ReportRow::at_most("t", 7, "r", "E", -1.0, -1.5, 0.005).pass);
        assert!(!ReportRow::at_most("t", 7, "r", "E", -1.0, -0.99, 0.005).pass);
        assert!(!ReportRow::within("t", 1, "r", "E", -1.0, -1.5, 0.005).pass);
    }
}

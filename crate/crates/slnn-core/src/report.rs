//! Error tables and summaries for trained models, plus CSV serialization.
//!
//! The default 19-point test grid `{i/19 : i = 1..19}` reproduces the layout
//! used for the reference error table on `[0, 1]`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::basis::{eval_basis, BasisOrder};
use crate::error::{Error, Result};
use crate::network::NetworkParams;
use crate::problem::ProblemSpec;
use crate::train::TrainConfig;
use crate::trial::{trial_eval, IvpConditions};

/// One test point: exact (when known), network approximation, absolute error.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ErrorRow {
    pub eta: f64,
    pub exact: Option<f64>,
    pub approx: f64,
    pub abs_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ErrorTable {
    pub problem_name: String,
    pub config_echo: TrainConfig,
    pub rows: Vec<ErrorRow>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Summary {
    pub max_abs_error: f64,
    pub rmse: f64,
    pub n_points: usize,
}

/// Numeric formatting for emitted tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    /// 17 significant digits; parses back bit-for-bit.
    #[default]
    Full,
    /// Fixed 4 decimal places, matching the reference table's presentation.
    Paper,
}

/// `k` equidistant test points `{a + i (b-a)/k : i = 1..k}`.
pub fn test_grid(problem: &ProblemSpec, k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::InvalidArgument { name: "test_points", reason: "must be >= 1" });
    }
    let (a, b) = problem.domain;
    Ok((1..=k).map(|i| a + i as f64 * (b - a) / k as f64).collect())
}

/// Evaluate the trained trial solution on a grid against the exact solution.
pub fn evaluate(
    model: &NetworkParams,
    conds: &IvpConditions,
    problem: &ProblemSpec,
    grid: &[f64],
    config: &TrainConfig,
) -> Result<ErrorTable> {
    let order = BasisOrder::new(model.order())?;
    let mut rows = Vec::with_capacity(grid.len());
    for &eta in grid {
        let basis = eval_basis(order, eta)?;
        let t = trial_eval(conds, model, &basis, eta)?;
        let exact = problem.exact_value(eta)?;
        rows.push(ErrorRow {
            eta,
            exact,
            approx: t.xi,
            abs_error: exact.map(|e| libm::fabs(e - t.xi)),
        });
    }
    Ok(ErrorTable {
        problem_name: problem.name.clone(),
        config_echo: *config,
        rows,
    })
}

/// Max and root-mean-square over the rows that carry an absolute error.
pub fn summarize(table: &ErrorTable) -> Result<Summary> {
    let errors: Vec<f64> = table.rows.iter().filter_map(|r| r.abs_error).collect();
    if errors.is_empty() {
        return Err(Error::NoExactValues);
    }
    let max = errors.iter().fold(0.0f64, |m, &e| m.max(e));
    let mean_sq = errors.iter().map(|e| e * e).sum::<f64>() / errors.len() as f64;
    Ok(Summary {
        max_abs_error: max,
        rmse: libm::sqrt(mean_sq),
        n_points: errors.len(),
    })
}

/// Format one value; `Full` round-trips bitwise through parsing.
pub fn format_value(v: f64, precision: Precision) -> String {
    match precision {
        Precision::Full => format!("{v:.16e}"),
        Precision::Paper => format!("{v:.4}"),
    }
}

/// CSV with header `eta,exact,slnn,abs_error`, LF line endings, empty fields
/// for missing exact values.
pub fn emit_csv(table: &ErrorTable, precision: Precision) -> String {
    let mut out = String::from("eta,exact,slnn,abs_error\n");
    for row in &table.rows {
        out.push_str(&format_value(row.eta, precision));
        out.push(',');
        if let Some(e) = row.exact {
            out.push_str(&format_value(e, precision));
        }
        out.push(',');
        out.push_str(&format_value(row.approx, precision));
        out.push(',');
        if let Some(e) = row.abs_error {
            out.push_str(&format_value(e, precision));
        }
        out.push('\n');
    }
    out
}

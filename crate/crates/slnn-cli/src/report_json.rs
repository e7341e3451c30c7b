//! JSON report format: error table plus summary plus the full training
//! configuration (including the seed), with stable key order.

use serde::Serialize;
use slnn_core::report::{ErrorTable, Summary};
use slnn_core::train::TrainReport;

#[derive(Serialize)]
struct JsonReport<'a> {
    problem: &'a str,
    config: &'a slnn_core::TrainConfig,
    converged: bool,
    iterations: usize,
    final_loss: f64,
    weights: &'a [f64],
    summary: Option<&'a Summary>,
    rows: &'a [slnn_core::ErrorRow],
}

pub fn emit_json(table: &ErrorTable, summary: Option<&Summary>, report: &TrainReport) -> String {
    let doc = JsonReport {
        problem: &table.problem_name,
        config: &table.config_echo,
        converged: report.converged,
        iterations: report.iterations,
        final_loss: *report.loss_history.last().expect("loss history is never empty"),
        weights: &report.final_params.weights,
        summary,
        rows: &table.rows,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("report serialization cannot fail");
    out.push('\n');
    out
}

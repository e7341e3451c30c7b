//! Seeded randomized comparison of the analytic loss gradient against the
//! central-difference oracle.

use slnn_core::network::{Activation, NetworkParams};
use slnn_core::problem::ProblemSpec;
use slnn_core::train::{finite_diff_gradient, loss_gradient, make_grid, SplitMix64};
use slnn_core::{BasisOrder, Result};

/// Discrepancy floor: entries smaller than `1e-9 / 1e-6` in magnitude are
/// compared on an absolute scale so rounding noise near zero does not
/// register as a large relative error.
const SCALE_FLOOR: f64 = 1e-3;

pub struct GradCheckConfig {
    pub order: BasisOrder,
    pub activation: Activation,
    pub trials: usize,
    pub seed: u64,
    pub train_points: usize,
    pub fd_step: f64,
}

/// Worst relative discrepancy between analytic and finite-difference
/// gradients over `trials` random weight vectors.
pub fn worst_discrepancy(problem: &ProblemSpec, config: &GradCheckConfig) -> Result<f64> {
    let grid = make_grid(problem, config.train_points)?;
    let mut rng = SplitMix64::new(config.seed);
    let m = config.order.get();
    let mut worst: f64 = 0.0;
    for _ in 0..config.trials {
        let weights: Vec<f64> = (0..m).map(|_| rng.uniform_symmetric(1.0)).collect();
        let params = NetworkParams::new(weights, config.activation);
        let analytic = loss_gradient(problem, &problem.conditions, &params, &grid)?;
        let fd =
            finite_diff_gradient(problem, &problem.conditions, &params, &grid, config.fd_step)?;
        for (a, f) in analytic.iter().zip(fd.iter()) {
            let scale = a.abs().max(f.abs()).max(SCALE_FLOOR);
            worst = worst.max((a - f).abs() / scale);
        }
    }
    Ok(worst)
}

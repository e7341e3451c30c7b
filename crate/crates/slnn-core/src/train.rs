//! Collocation loss, analytic gradient, and the gradient-descent loop.
//!
//! The loss is the half-sum of squared residuals over the collocation grid,
//!
//! ```text
//! E(w) = sum_i 1/2 r_i^2,    r_i = xi_t''(eta_i) - f(eta_i, xi_t, xi_t')
//! ```
//!
//! and its gradient expands by the chain rule to
//!
//! ```text
//! dE/dw_j = sum_i r_i (d2xi_dw_j + (s/eta_i) dxi_dw_j + dg/dxi * xi_dw_j)
//! ```
//!
//! Weights follow plain gradient descent `w <- w - rho dE/dw`, optionally
//! safeguarded by step halving: a step that increases `E` is rejected and
//! retried with `rho/2`; after an accepted step `rho` grows by 1.5x, capped
//! at the configured rate. All randomness comes from a splitmix64 generator
//! seeded from the config, so identical configs give bit-identical reports.

use alloc::vec::Vec;

use crate::basis::{eval_basis_grid, BasisOrder};
use crate::error::{Error, Result};
use crate::network::{Activation, NetworkParams};
use crate::problem::ProblemSpec;
use crate::trial::{trial_eval, IvpConditions};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrainConfig {
    pub order: BasisOrder,
    pub activation: Activation,
    /// Number of equidistant collocation points (left endpoint excluded).
    pub train_points: usize,
    pub learning_rate: f64,
    pub max_iters: usize,
    pub loss_tol: f64,
    pub seed: u64,
    pub init_range: f64,
    pub backtracking: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            order: BasisOrder::new(5).unwrap(),
            activation: Activation::Tanh,
            train_points: 10,
            learning_rate: 0.01,
            max_iters: 50_000,
            loss_tol: 1e-10,
            seed: 0,
            init_range: 0.5,
            backtracking: true,
        }
    }
}

impl TrainConfig {
    fn validate(&self) -> Result<()> {
        if self.train_points < 2 {
            return Err(Error::InvalidArgument { name: "train_points", reason: "must be >= 2" });
        }
        if !(self.learning_rate > 0.0) {
            return Err(Error::InvalidArgument { name: "learning_rate", reason: "must be > 0" });
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidArgument { name: "max_iters", reason: "must be >= 1" });
        }
        if !(self.loss_tol >= 0.0) {
            return Err(Error::InvalidArgument { name: "loss_tol", reason: "must be >= 0" });
        }
        if !(self.init_range > 0.0) {
            return Err(Error::InvalidArgument { name: "init_range", reason: "must be > 0" });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainReport {
    pub final_params: NetworkParams,
    /// Loss after initialization and after each accepted step; non-increasing
    /// when backtracking is enabled.
    pub loss_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub grid: Vec<f64>,
    pub seed_used: u64,
}

/// `h` equidistant collocation points `{a + i (b-a)/h : i = 1..h}`.
///
/// The left endpoint is excluded: the `s/eta` term is undefined at a singular
/// origin and the trial solution already pins the initial conditions there.
pub fn make_grid(problem: &ProblemSpec, h: usize) -> Result<Vec<f64>> {
    if h < 2 {
        return Err(Error::InvalidArgument { name: "train_points", reason: "must be >= 2" });
    }
    let (a, b) = problem.domain;
    Ok((1..=h).map(|i| a + i as f64 * (b - a) / h as f64).collect())
}

/// `E(w)` over the grid.
pub fn loss(
    problem: &ProblemSpec,
    conds: &IvpConditions,
    params: &NetworkParams,
    grid: &[f64],
) -> Result<f64> {
    let order = BasisOrder::new(params.order())?;
    let evals = eval_basis_grid(order, grid)?;
    let mut total = 0.0;
    for (basis, &eta) in evals.iter().zip(grid.iter()) {
        let t = trial_eval(conds, params, basis, eta)?;
        let res = problem.residual(eta, &t)?;
        total += 0.5 * res.r * res.r;
    }
    Ok(total)
}

/// Analytic `dE/dw` via the chain rule.
pub fn loss_gradient(
    problem: &ProblemSpec,
    conds: &IvpConditions,
    params: &NetworkParams,
    grid: &[f64],
) -> Result<Vec<f64>> {
    let m = params.order();
    let order = BasisOrder::new(m)?;
    let evals = eval_basis_grid(order, grid)?;
    let mut grad = alloc::vec![0.0; m];
    for (basis, &eta) in evals.iter().zip(grid.iter()) {
        let t = trial_eval(conds, params, basis, eta)?;
        let res = problem.residual(eta, &t)?;
        // dr/dw_j = d2xi_dw - df_ddxi * dxi_dw + df_dxi * xi_dw
        // (df_ddxi = -s/eta; df_dxi holds +dg/dxi, and f carries -g)
        for j in 0..m {
            let dr = t.d2xi_dw[j] - res.df_ddxi * t.dxi_dw[j] + res.df_dxi * t.xi_dw[j];
            grad[j] += res.r * dr;
        }
    }
    Ok(grad)
}

/// Central-difference approximation of `dE/dw`; the independent oracle for
/// [`loss_gradient`].
pub fn finite_diff_gradient(
    problem: &ProblemSpec,
    conds: &IvpConditions,
    params: &NetworkParams,
    grid: &[f64],
    step: f64,
) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1e-3) {
        return Err(Error::InvalidArgument { name: "step", reason: "must be in (0, 1e-3]" });
    }
    let m = params.order();
    let mut grad = Vec::with_capacity(m);
    let mut probe = params.clone();
    for j in 0..m {
        let w = params.weights[j];
        probe.weights[j] = w + step;
        let plus = loss(problem, conds, &probe, grid)?;
        probe.weights[j] = w - step;
        let minus = loss(problem, conds, &probe, grid)?;
        probe.weights[j] = w;
        grad.push((plus - minus) / (2.0 * step));
    }
    Ok(grad)
}

/// splitmix64; fixed so that seeded runs reproduce bit-for-bit everywhere.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [-range, range).
    pub fn uniform_symmetric(&mut self, range: f64) -> f64 {
        (2.0 * self.next_f64() - 1.0) * range
    }
}

/// Gradient descent on the collocation loss.
pub fn train(problem: &ProblemSpec, config: &TrainConfig) -> Result<TrainReport> {
    config.validate()?;
    let conds = problem.conditions;
    let grid = make_grid(problem, config.train_points)?;

    let mut rng = SplitMix64::new(config.seed);
    let m = config.order.get();
    let weights: Vec<f64> = (0..m).map(|_| rng.uniform_symmetric(config.init_range)).collect();
    let mut params = NetworkParams::new(weights, config.activation);

    let mut loss_history = Vec::new();
    let mut current = loss(problem, &conds, &params, &grid)?;
    if !current.is_finite() {
        return Err(Error::Divergence { iteration: 0, last_loss: f64::NAN });
    }
    loss_history.push(current);

    let mut rho = config.learning_rate;
    let mut iterations = 0;
    let mut converged = current <= config.loss_tol;

    while !converged && iterations < config.max_iters {
        let grad = loss_gradient(problem, &conds, &params, &grid)?;
        if grad.iter().any(|g| !g.is_finite()) {
            return Err(Error::Divergence { iteration: iterations, last_loss: current });
        }

        let mut accepted = false;
        loop {
            let candidate_weights: Vec<f64> = params
                .weights
                .iter()
                .zip(grad.iter())
                .map(|(w, g)| w - rho * g)
                .collect();
            let candidate = NetworkParams::new(candidate_weights, config.activation);
            let next = loss(problem, &conds, &candidate, &grid)?;

            let reject = if config.backtracking {
                !next.is_finite() || next > current
            } else {
                false
            };
            if reject {
                rho *= 0.5;
                if rho < 1e-300 {
                    break; // stationary up to rounding; cannot descend further
                }
                continue;
            }
            if !next.is_finite() {
                return Err(Error::Divergence { iteration: iterations, last_loss: current });
            }
            params = candidate;
            current = next;
            accepted = true;
            break;
        }
        if !accepted {
            break;
        }

        iterations += 1;
        loss_history.push(current);
        rho = (rho * 1.5).min(config.learning_rate);
        converged = current <= config.loss_tol;
    }

    Ok(TrainReport {
        final_params: params,
        loss_history,
        iterations,
        converged,
        grid,
        seed_used: config.seed,
    })
}

//! Shifted Legendre neural network (SLNN) solver for second-order singular
//! initial value problems of Lane-Emden type,
//!
//! ```text
//! xi'' + (s/eta) xi' + g(eta, xi) = f(eta),    xi(a) = G,  xi'(a) = G'
//! ```
//!
//! The solver approximates the solution with a single-layer functional-link
//! network whose input is expanded through shifted Legendre polynomials
//! `L_0..L_{m-1}` on `[0, 1]`. The trial solution
//!
//! ```text
//! xi_t(eta) = G + G'(eta - a) + (eta - a)^2 N(eta, w)
//! ```
//!
//! satisfies the initial conditions for every weight vector, so training only
//! has to drive the collocation residual of the differential equation to zero.
//! Training is plain gradient descent on the half-sum of squared residuals,
//! with an analytic chain-rule gradient and an optional step-halving safeguard.
//!
//! The crate is `no_std` (with `alloc`); all floating-point transcendentals
//! come from [`libm`], so results are bit-identical across platforms.

#![no_std]

extern crate alloc;

pub mod basis;
pub mod error;
pub mod expr;
pub mod network;
pub mod problem;
pub mod report;
pub mod train;
pub mod trial;

pub use basis::{BasisEval, BasisOrder};
pub use error::{Error, Result};
pub use expr::Expr;
pub use network::{Activation, NetOutput, NetWeightGrads, NetworkParams};
pub use problem::{ProblemSpec, ResidualEval};
pub use report::{ErrorRow, ErrorTable, Precision, Summary};
pub use train::{TrainConfig, TrainReport};
pub use trial::{IvpConditions, TrialEval};

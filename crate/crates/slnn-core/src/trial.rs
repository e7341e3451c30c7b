//! Trial solution that satisfies the initial conditions structurally:
//!
//! ```text
//! xi_t(eta) = G + G'(eta - a) + (eta - a)^2 N(eta, w)
//! ```
//!
//! At `eta = a` the value and slope equal the prescribed conditions for every
//! weight vector, so no penalty terms are needed and the singular point never
//! has to be collocated.

use alloc::vec::Vec;

use crate::basis::BasisEval;
use crate::error::Result;
use crate::network::{forward, weight_gradients, NetworkParams};

/// Initial conditions `xi(a) = g0`, `xi'(a) = g1`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IvpConditions {
    pub a: f64,
    pub g0: f64,
    pub g1: f64,
}

/// Trial solution value, derivatives, and per-weight gradients of all three.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialEval {
    pub xi: f64,
    pub dxi: f64,
    pub d2xi: f64,
    pub xi_dw: Vec<f64>,
    pub dxi_dw: Vec<f64>,
    pub d2xi_dw: Vec<f64>,
}

/// `xi_t` and derivatives at `eta`, with gradients in every weight.
///
/// With `u = eta - a`:
///
/// ```text
/// xi    = g0 + g1 u + u^2 n
/// xi'   = g1 + 2u n + u^2 n'
/// xi''  = 2 n + 4u n' + u^2 n''
/// ```
///
/// The weight gradients reuse the same three polynomials with `(n, n', n'')`
/// replaced by their gradients and the constant terms dropped.
pub fn trial_eval(
    conds: &IvpConditions,
    params: &NetworkParams,
    basis: &BasisEval,
    eta: f64,
) -> Result<TrialEval> {
    let out = forward(params, basis)?;
    let grads = weight_gradients(params, basis)?;
    let u = eta - conds.a;
    let u2 = u * u;

    let m = params.order();
    let mut xi_dw = Vec::with_capacity(m);
    let mut dxi_dw = Vec::with_capacity(m);
    let mut d2xi_dw = Vec::with_capacity(m);
    for j in 0..m {
        let (gn, gdn, gd2n) = (grads.dn_dw[j], grads.ddn_dw[j], grads.dd2n_dw[j]);
        xi_dw.push(u2 * gn);
        dxi_dw.push(2.0 * u * gn + u2 * gdn);
        d2xi_dw.push(2.0 * gn + 4.0 * u * gdn + u2 * gd2n);
    }

    Ok(TrialEval {
        xi: conds.g0 + conds.g1 * u + u2 * out.n,
        dxi: conds.g1 + 2.0 * u * out.n + u2 * out.dn,
        d2xi: 2.0 * out.n + 4.0 * u * out.dn + u2 * out.d2n,
        xi_dw,
        dxi_dw,
        d2xi_dw,
    })
}

//! Single-layer functional-link network over the shifted Legendre basis.
//!
//! The network output is `N(eta, w) = act(C)` with `C = sum_i w_i L_{i-1}(eta)`.
//! Because the basis carries first and second derivatives, `dN/deta` and
//! `d^2N/deta^2` follow from the chain rule, and the gradient of all three
//! quantities with respect to every weight has a closed form.

use alloc::vec;
use alloc::vec::Vec;

use crate::basis::BasisEval;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Activation {
    #[default]
    Tanh,
    /// Linear pass-through. Needed when the target network function takes
    /// values outside tanh's range (-1, 1).
    Identity,
}

impl Activation {
    /// act, act', act'', act''' at `c`.
    ///
    /// For tanh with `t = tanh(c)`: act' = 1 - t^2, act'' = -2t(1 - t^2),
    /// act''' = -2(1 - t^2)(1 - 3t^2).
    fn derivatives(self, c: f64) -> (f64, f64, f64, f64) {
        match self {
            Activation::Tanh => {
                let t = libm::tanh(c);
                let s = 1.0 - t * t;
                (t, s, -2.0 * t * s, -2.0 * s * (1.0 - 3.0 * t * t))
            }
            Activation::Identity => (c, 1.0, 0.0, 0.0),
        }
    }
}

/// The trainable state: expansion weights `w_1..w_m` plus the activation.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NetworkParams {
    pub weights: Vec<f64>,
    pub activation: Activation,
}

impl NetworkParams {
    pub fn new(weights: Vec<f64>, activation: Activation) -> Self {
        NetworkParams { weights, activation }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.weights.len()
    }

    fn check_dims(&self, basis: &BasisEval) -> Result<()> {
        if basis.order() != self.weights.len() {
            return Err(Error::DimensionMismatch {
                expected: self.weights.len(),
                got: basis.order(),
            });
        }
        Ok(())
    }
}

/// Network output and its first two derivatives in `eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetOutput {
    pub n: f64,
    pub dn: f64,
    pub d2n: f64,
}

/// Gradients of `n`, `dn`, `d2n` with respect to every weight.
#[derive(Debug, Clone, PartialEq)]
pub struct NetWeightGrads {
    pub dn_dw: Vec<f64>,
    pub ddn_dw: Vec<f64>,
    pub dd2n_dw: Vec<f64>,
}

/// Linear sum and its eta-derivatives: `C = sum w_i L_{i-1}`, `C' = sum w_i L'_{i-1}`,
/// `C'' = sum w_i L''_{i-1}`.
fn linear_sums(params: &NetworkParams, basis: &BasisEval) -> (f64, f64, f64) {
    let mut c = 0.0;
    let mut c1 = 0.0;
    let mut c2 = 0.0;
    for (i, &w) in params.weights.iter().enumerate() {
        c += w * basis.values[i];
        c1 += w * basis.d1[i];
        c2 += w * basis.d2[i];
    }
    (c, c1, c2)
}

/// `N`, `dN/deta`, `d^2N/deta^2` at the basis point.
pub fn forward(params: &NetworkParams, basis: &BasisEval) -> Result<NetOutput> {
    params.check_dims(basis)?;
    let (c, c1, c2) = linear_sums(params, basis);
    let (a, a1, a2, _) = params.activation.derivatives(c);
    Ok(NetOutput {
        n: a,
        dn: a1 * c1,
        d2n: a2 * c1 * c1 + a1 * c2,
    })
}

/// Gradient of each [`forward`] output with respect to each weight `w_j`.
///
/// With `L = L_{j-1}`, `L' = d1[j-1]`, `L'' = d2[j-1]`:
///
/// ```text
/// dN/dw_j    = act'(C) L
/// d(N')/dw_j  = act''(C) L C' + act'(C) L'
/// d(N'')/dw_j = act'''(C) L C'^2 + act''(C)(2 C' L' + L C'') + act'(C) L''
/// ```
pub fn weight_gradients(params: &NetworkParams, basis: &BasisEval) -> Result<NetWeightGrads> {
    params.check_dims(basis)?;
    let m = params.order();
    let (c, c1, c2) = linear_sums(params, basis);
    let (_, a1, a2, a3) = params.activation.derivatives(c);

    let mut dn_dw = vec![0.0; m];
    let mut ddn_dw = vec![0.0; m];
    let mut dd2n_dw = vec![0.0; m];
    for j in 0..m {
        let l = basis.values[j];
        let l1 = basis.d1[j];
        let l2 = basis.d2[j];
        dn_dw[j] = a1 * l;
        ddn_dw[j] = a2 * l * c1 + a1 * l1;
        dd2n_dw[j] = a3 * l * c1 * c1 + a2 * (2.0 * c1 * l1 + l * c2) + a1 * l2;
    }
    Ok(NetWeightGrads { dn_dw, ddn_dw, dd2n_dw })
}

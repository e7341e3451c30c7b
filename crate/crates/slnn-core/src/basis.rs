//! Shifted Legendre polynomials `L_k(eta) = P_k(2 eta - 1)` on `[0, 1]`,
//! evaluated together with first and second derivatives.
//!
//! The polynomials satisfy the three-term recurrence
//!
//! ```text
//! (k + 1) L_{k+1}(eta) = (2k + 1)(2 eta - 1) L_k(eta) - k L_{k-1}(eta)
//! ```
//!
//! with `L_0 = 1`, `L_1 = 2 eta - 1`. (Some references print the recurrence
//! with `P_k` on both sides, which is an index typo; the form above is the
//! standard one.) Derivatives are obtained by differentiating the recurrence,
//! so values, `d1`, and `d2` come out of a single forward sweep.
//!
//! The shifted family is orthogonal on `[0, 1]` with
//! `integral_0^1 L_j L_k = delta_jk / (2j + 1)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Hard ceiling on the number of basis functions.
pub const MAX_ORDER: usize = 64;

/// Number of shifted Legendre basis functions, indices `0..m-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BasisOrder(usize);

impl BasisOrder {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_ORDER {
            return Err(Error::InvalidOrder { m, max: MAX_ORDER });
        }
        Ok(BasisOrder(m))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

/// Values and first/second derivatives of `L_0..L_{m-1}` at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisEval {
    pub eta: f64,
    pub values: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
}

impl BasisEval {
    #[inline]
    pub fn order(&self) -> usize {
        self.values.len()
    }
}

/// Evaluate `L_0..L_{m-1}` and their first two derivatives at `eta`.
///
/// Differentiating the recurrence once and twice gives, with `x = 2 eta - 1`:
///
/// ```text
/// (k+1) L'_{k+1} = (2k+1)(2 L_k + x L'_k) - k L'_{k-1}
/// (k+1) L''_{k+1} = (2k+1)(4 L'_k + x L''_k) - k L''_{k-1}
/// ```
pub fn eval_basis(order: BasisOrder, eta: f64) -> Result<BasisEval> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::OutOfDomain { what: "eta", value: eta });
    }
    let m = order.get();
    let mut values = vec![0.0; m];
    let mut d1 = vec![0.0; m];
    let mut d2 = vec![0.0; m];

    let x = 2.0 * eta - 1.0;
    values[0] = 1.0;
    if m > 1 {
        values[1] = x;
        d1[1] = 2.0;
    }
    for k in 1..m.saturating_sub(1) {
        let kf = k as f64;
        let a = 2.0 * kf + 1.0;
        // single division keeps the endpoint identities L_k(1) = 1 and
        // L_k(0) = (-1)^k exact
        values[k + 1] = (a * x * values[k] - kf * values[k - 1]) / (kf + 1.0);
        d1[k + 1] = (a * (2.0 * values[k] + x * d1[k]) - kf * d1[k - 1]) / (kf + 1.0);
        d2[k + 1] = (a * (4.0 * d1[k] + x * d2[k]) - kf * d2[k - 1]) / (kf + 1.0);
    }
    Ok(BasisEval { eta, values, d1, d2 })
}

/// Batched [`eval_basis`] over a collocation grid.
pub fn eval_basis_grid(order: BasisOrder, grid: &[f64]) -> Result<Vec<BasisEval>> {
    grid.iter()
        .enumerate()
        .map(|(index, &eta)| {
            eval_basis(order, eta)
                .map_err(|_| Error::GridPointOutOfDomain { index, value: eta })
        })
        .collect()
}

/// Gauss-Legendre nodes and weights on `[0, 1]`.
///
/// Nodes are the roots of `P_n`, found by Newton iteration from the Chebyshev
/// initial guess, then mapped from `[-1, 1]`. Exact for polynomials of degree
/// `<= 2n - 1` up to rounding.
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // i-th root of P_n, descending in x
        let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut pd = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            pd = d;
            let dx = p / d;
            x -= dx;
            if libm::fabs(dx) < 1e-15 {
                break;
            }
        }
        nodes[i] = 0.5 * (x + 1.0);
        weights[i] = 1.0 / ((1.0 - x * x) * pd * pd);
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

/// `P_n(x)` and `P'_n(x)` on `[-1, 1]` via the standard recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = p_next;
    }
    // (x^2 - 1) P'_n = n (x P_n - P_{n-1})
    let d = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}

/// Worst deviation of the computed Gram matrix from the exact orthogonality
/// relation `integral_0^1 L_j L_k = delta_jk / (2j + 1)`.
pub fn orthogonality_defect(order: BasisOrder, quadrature_points: usize) -> Result<f64> {
    let m = order.get();
    if quadrature_points < 2 * m {
        return Err(Error::InsufficientQuadrature { needed: 2 * m, got: quadrature_points });
    }
    let (nodes, weights) = gauss_legendre_unit(quadrature_points);
    let evals = eval_basis_grid(order, &nodes)?;
    let mut defect: f64 = 0.0;
    for j in 0..m {
        for k in 0..m {
            let mut integral = 0.0;
            for (e, &w) in evals.iter().zip(weights.iter()) {
                integral += w * e.values[j] * e.values[k];
            }
            let expected = if j == k { 1.0 / (2.0 * j as f64 + 1.0) } else { 0.0 };
            defect = defect.max(libm::fabs(integral - expected));
        }
    }
    Ok(defect)
}

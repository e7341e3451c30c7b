//! Singular initial value problems in the form
//!
//! ```text
//! xi'' = f(eta, xi, xi') = forcing(eta) - g(eta, xi) - (s/eta) xi'
//! ```
//!
//! i.e. the Lane-Emden family `xi'' + (s/eta) xi' + g(eta, xi) = forcing(eta)`
//! with `s = 2` in the classical case. Two built-ins are provided:
//!
//! * `example1`: `g = xi^5`, zero forcing, `xi(0) = 1`, `xi'(0) = 0`, exact
//!   solution `(1 + eta^2/3)^(-1/2)`.
//! * `example2`: `g = xi`, forcing `6 + 12 eta + eta^2 + eta^3`, `xi(0) = 0`,
//!   `xi'(0) = 0`, exact solution `eta^2 + eta^3`.
//!
//! `example2` is stored in corrected form. The source statement gives
//! `xi(0) = 1` and forcing `6 + 12 eta + 2 eta^2 + eta^3`, but substituting
//! its own exact solution `xi = eta^2 + eta^3` into the equation yields
//! `(2 + 6 eta) + (2/eta)(2 eta + 3 eta^2) + (eta^2 + eta^3)
//!  = 6 + 12 eta + eta^2 + eta^3` and `xi(0) = 0`, so the printed initial
//! value and the `2 eta^2` term are inconsistent with the exact solution the
//! errors are measured against. The corrected statement is what the exact
//! solution actually solves.

use alloc::string::String;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::trial::{IvpConditions, TrialEval};

/// A singular IVP with optional known exact solution.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub name: String,
    /// The `s` in the `(s/eta) xi'` term; 2 for the classical Lane-Emden form.
    pub singular_coefficient: f64,
    pub g: Expr,
    pub forcing: Expr,
    pub domain: (f64, f64),
    pub conditions: IvpConditions,
    pub exact: Option<Expr>,
    /// Precomputed `dg/dxi`, used by the analytic loss gradient.
    dg_dxi: Expr,
}

/// Residual of the trial solution at one point plus the partials of `f`
/// needed by the chain rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualEval {
    /// `xi_t'' - f(eta, xi_t, xi_t')`
    pub r: f64,
    /// `dg/dxi` at `(eta, xi_t)`; note `df/dxi = -dg/dxi`, the sign is the
    /// caller's responsibility.
    pub df_dxi: f64,
    /// `df/dxi' = -s/eta`, exactly.
    pub df_ddxi: f64,
}

impl ProblemSpec {
    pub fn new(
        name: String,
        singular_coefficient: f64,
        g: Expr,
        forcing: Expr,
        domain: (f64, f64),
        conditions: IvpConditions,
        exact: Option<Expr>,
    ) -> Result<Self> {
        let (a, b) = domain;
        if !(a >= 0.0 && a < b) {
            return Err(Error::Schema { field: "domain", reason: "0 <= a < b required".into() });
        }
        if b > 1.0 {
            // the shifted Legendre basis lives on [0, 1]
            return Err(Error::Schema { field: "domain", reason: "b <= 1 required".into() });
        }
        if conditions.a != a {
            return Err(Error::Schema {
                field: "domain",
                reason: "initial conditions must be posed at the left endpoint".into(),
            });
        }
        if forcing.contains_xi() {
            return Err(Error::Schema {
                field: "forcing",
                reason: "may reference eta only".into(),
            });
        }
        if let Some(e) = &exact {
            if e.contains_xi() {
                return Err(Error::Schema {
                    field: "exact",
                    reason: "may reference eta only".into(),
                });
            }
        }
        let dg_dxi = g.differentiate_xi();
        Ok(ProblemSpec {
            name,
            singular_coefficient,
            g,
            forcing,
            domain,
            conditions,
            exact,
            dg_dxi,
        })
    }

    pub const BUILTIN_NAMES: &'static str = "example1, example2";

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "example1" => ProblemSpec::new(
                String::from("example1"),
                2.0,
                Expr::parse("xi^5")?,
                Expr::parse("0")?,
                (0.0, 1.0),
                IvpConditions { a: 0.0, g0: 1.0, g1: 0.0 },
                Some(Expr::parse("(1 + eta^2/3)^(-1/2)")?),
            ),
            "example2" => ProblemSpec::new(
                String::from("example2"),
                2.0,
                Expr::parse("xi")?,
                Expr::parse("6 + 12*eta + eta^2 + eta^3")?,
                (0.0, 1.0),
                IvpConditions { a: 0.0, g0: 0.0, g1: 0.0 },
                Some(Expr::parse("eta^2 + eta^3")?),
            ),
            other => Err(Error::UnknownProblem {
                name: String::from(other),
                available: Self::BUILTIN_NAMES,
            }),
        }
    }

    /// Residual `r = xi_t'' - [forcing - g - (s/eta) xi_t']` at `eta`, given a
    /// trial evaluation there, plus the partials of `f` in `xi` and `xi'`.
    pub fn residual(&self, eta: f64, trial: &TrialEval) -> Result<ResidualEval> {
        let (a, b) = self.domain;
        if eta == 0.0 && a == 0.0 {
            return Err(Error::SingularPoint);
        }
        if !(eta > a && eta <= b) {
            return Err(Error::OutOfDomain { what: "eta", value: eta });
        }
        let s_over_eta = self.singular_coefficient / eta;
        let f = self.forcing.eval(eta, 0.0)?
            - self.g.eval(eta, trial.xi)?
            - s_over_eta * trial.dxi;
        Ok(ResidualEval {
            r: trial.d2xi - f,
            df_dxi: self.dg_dxi.eval(eta, trial.xi)?,
            df_ddxi: -s_over_eta,
        })
    }

    /// Exact solution value when the problem carries one.
    pub fn exact_value(&self, eta: f64) -> Result<Option<f64>> {
        match &self.exact {
            Some(e) => Ok(Some(e.eval(eta, 0.0)?)),
            None => Ok(None),
        }
    }
}

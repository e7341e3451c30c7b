//! JSON problem documents.
//!
//! Schema:
//!
//! ```json
//! {
//!   "name": "example1",
//!   "singular_coefficient": 2.0,
//!   "g": "xi^5",
//!   "forcing": "0",
//!   "domain": [0.0, 1.0],
//!   "initial_value": 1.0,
//!   "initial_slope": 0.0,
//!   "exact": "(1 + eta^2/3)^(-1/2)"
//! }
//! ```
//!
//! `exact` may be `null`. Unknown fields are rejected. Field order is
//! irrelevant; encoding is UTF-8.

use serde::{Deserialize, Serialize};
use slnn_core::expr::Expr;
use slnn_core::problem::ProblemSpec;
use slnn_core::trial::IvpConditions;
use slnn_core::Error;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemDocument {
    name: String,
    singular_coefficient: f64,
    g: String,
    forcing: String,
    domain: [f64; 2],
    initial_value: f64,
    initial_slope: f64,
    exact: Option<String>,
}

fn parse_field(field: &'static str, source: &str) -> Result<Expr, Error> {
    Expr::parse(source).map_err(|e| match e {
        // keep unknown-identifier errors as-is; wrap the rest with the field path
        Error::UnknownIdentifier { .. } => e,
        other => Error::Schema { field, reason: other.to_string() },
    })
}

/// Parse and fully validate a problem document.
pub fn load_problem(contents: &str) -> Result<ProblemSpec, Error> {
    let doc: ProblemDocument = serde_json::from_str(contents)
        .map_err(|e| Error::Schema { field: "document", reason: e.to_string() })?;

    let g = parse_field("g", &doc.g)?;
    let forcing = parse_field("forcing", &doc.forcing)?;
    let exact = match &doc.exact {
        Some(src) => Some(parse_field("exact", src)?),
        None => None,
    };
    let [a, b] = doc.domain;
    if !(a < b) {
        return Err(Error::Schema { field: "domain", reason: "a < b required".into() });
    }
    ProblemSpec::new(
        doc.name,
        doc.singular_coefficient,
        g,
        forcing,
        (a, b),
        IvpConditions { a, g0: doc.initial_value, g1: doc.initial_slope },
        exact,
    )
}

/// Serialize a spec back into the document format; `load_problem(emit(s))`
/// round-trips to an equal spec.
pub fn emit_problem(spec: &ProblemSpec) -> String {
    let doc = ProblemDocument {
        name: spec.name.clone(),
        singular_coefficient: spec.singular_coefficient,
        g: spec.g.to_string(),
        forcing: spec.forcing.to_string(),
        domain: [spec.domain.0, spec.domain.1],
        initial_value: spec.conditions.g0,
        initial_slope: spec.conditions.g1,
        exact: spec.exact.as_ref().map(|e| e.to_string()),
    };
    serde_json::to_string_pretty(&doc).expect("document serialization cannot fail")
}

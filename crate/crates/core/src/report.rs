//! Report assembly and JSON emission for the CLI.
//!
//! All rationals are rendered as `num/den` strings (always with an explicit
//! denominator); key order is fixed by struct declaration and insertion
//! order, so emitting the same report twice is byte-identical, and parsing
//! then re-emitting a report round-trips exactly.

use crate::algebra::{BigRational, Poly, RationalFunction};
use crate::cyclotomic::{Decomposition, GraphDecomposition};
use crate::error::Error;
use crate::graphs::{build_graph, loop_counts_upto, BipartiteGraph, GraphName, Parity};
use crate::measures::{catalog_measure, CatalogMeasure};
use crate::series::{factored_display, graph_t_series};
use crate::verify::{check_graph, CheckOutcome};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::time::Instant;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct Report {
    pub schema: String,
    pub graphs: Vec<GraphRecord>,
}

#[derive(Serialize)]
pub struct GraphRecord {
    pub graph: String,
    pub structure: Value,
    pub loops: Vec<u64>,
    pub t_series: String,
    pub t_series_coefficients: Value,
    pub measure: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Value>,
    pub verified: Vec<VerifiedCheck>,
    pub elapsed_ms: u64,
}

#[derive(Serialize)]
pub struct VerifiedCheck {
    pub name: String,
    pub passed: bool,
}

pub fn fraction_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Polynomial as a JSON array of fraction strings, degree 0 upward.
pub fn poly_json(p: &Poly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(fraction_string(c)))
            .collect(),
    )
}

/// Rational function as `{"num": [...], "den": [...]}` coefficient arrays.
pub fn ratfun_json(f: &RationalFunction) -> Value {
    json!({ "num": poly_json(f.num()), "den": poly_json(f.den()) })
}

/// Graph structure: vertex count, distinguished index, edge list, parity.
pub fn graph_json(g: &BipartiteGraph) -> Value {
    let edges: Vec<Value> = g.edges().into_iter().map(|(u, v)| json!([u, v])).collect();
    let parity: Vec<Value> = (0..g.vertex_count())
        .map(|v| {
            Value::String(
                match g.parity(v) {
                    Parity::Even => "even",
                    Parity::Odd => "odd",
                }
                .to_string(),
            )
        })
        .collect();
    json!({
        "vertex_count": g.vertex_count(),
        "distinguished": g.distinguished(),
        "edges": Value::Array(edges),
        "parity": Value::Array(parity),
    })
}

/// Measure as a JSON object: atom keys to fraction strings, or the
/// non-cyclotomic marker.
pub fn measure_json(name: &GraphName) -> Result<Value, Error> {
    let entry = catalog_measure(name)?;
    Ok(match entry.measure {
        CatalogMeasure::Cyclotomic(m) => {
            let mut map = Map::new();
            for (atom, c) in m.terms() {
                map.insert(atom.key(), Value::String(fraction_string(c)));
            }
            Value::Object(map)
        }
        CatalogMeasure::NonCyclotomic { .. } => json!({ "cyclotomic": false }),
    })
}

/// Labels, coefficient rows and right-hand side of an assembled system,
/// for annotating infeasibility certificates.
pub type SystemRows<'a> = (&'a [String], &'a [Vec<BigRational>], &'a [BigRational]);

/// Decomposition outcome as JSON, including the self-check data for
/// infeasibility certificates.
pub fn decomposition_json(result: &GraphDecomposition, sys_rows: Option<SystemRows>) -> Value {
    match &result.decomposition {
        Decomposition::Feasible {
            coefficients,
            null_space_dim,
        } => {
            let mut coeffs = Map::new();
            for (label, c) in coefficients {
                if !num_traits::Zero::is_zero(c) {
                    coeffs.insert(label.to_string(), Value::String(fraction_string(c)));
                }
            }
            json!({
                "outcome": "feasible",
                "period": result.period,
                "coefficients": Value::Object(coeffs),
                "null_space_dim": null_space_dim,
            })
        }
        Decomposition::Infeasible { witness } => {
            let mut w = Map::new();
            for (k, c) in witness.iter().enumerate() {
                if !num_traits::Zero::is_zero(c) {
                    w.insert(format!("c_{k}"), Value::String(fraction_string(c)));
                }
            }
            let mut out = Map::new();
            out.insert("outcome".into(), Value::String("infeasible".into()));
            out.insert("period".into(), Value::Number(result.period.into()));
            out.insert("witness".into(), Value::Object(w));
            if let Some((labels, rows, rhs)) = sys_rows {
                // Residuals of the certificate against every row: all zero
                // on the basis rows, nonzero on the target.
                let mut check = Map::new();
                for (label, row) in labels.iter().zip(rows) {
                    let dot: BigRational = witness.iter().zip(row).map(|(w, r)| w * r).sum();
                    check.insert(label.clone(), Value::String(fraction_string(&dot)));
                }
                let dot: BigRational = witness.iter().zip(rhs).map(|(w, r)| w * r).sum();
                check.insert("target".into(), Value::String(fraction_string(&dot)));
                out.insert("check".into(), Value::Object(check));
            }
            Value::Object(out)
        }
    }
}

/// Assemble the record for one finite graph.
pub fn graph_record(name: &GraphName, max_k: usize) -> Result<GraphRecord, Error> {
    let start = Instant::now();
    let g = build_graph(name)?;
    let loops: Vec<u64> = loop_counts_upto(&g, max_k)
        .iter()
        .map(|b| {
            u64::try_from(b).map_err(|_| {
                Error::InvalidParameter(format!(
                    "max-k {max_k} overflows the JSON loop representation for {name}"
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    let t = graph_t_series(&g);
    let decomposition = match crate::cyclotomic::decompose_graph(name) {
        Ok(result) => Some(decomposition_json(&result, None)),
        Err(Error::PeriodNotFound { .. }) => None,
        Err(e) => return Err(e),
    };
    let verified: Vec<VerifiedCheck> = check_graph(name, max_k, None)
        .into_iter()
        .map(|CheckOutcome { name, passed, .. }| VerifiedCheck { name, passed })
        .collect();
    Ok(GraphRecord {
        graph: name.to_string(),
        structure: graph_json(&g),
        loops,
        t_series: factored_display(&t),
        t_series_coefficients: ratfun_json(&t),
        measure: measure_json(name)?,
        decomposition,
        verified,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Full report over a set of graphs.
pub fn build_report(names: &[GraphName], max_k: usize) -> Result<Report, Error> {
    let graphs = names
        .iter()
        .map(|n| graph_record(n, max_k))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Report {
        schema: SCHEMA_VERSION.to_string(),
        graphs,
    })
}

/// Deterministic JSON bytes.
pub fn emit_json(report: &Report) -> String {
    serde_json::to_string(report).expect("report serializes")
}

pub fn report_has_failure(report: &Report) -> bool {
    report
        .graphs
        .iter()
        .any(|g| g.verified.iter().any(|c| !c.passed))
}

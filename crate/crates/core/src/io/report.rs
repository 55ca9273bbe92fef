//! JSON verification reports with names instead of indices.

use serde_json::{json, Map, Value};

use crate::closure::{BestCaseSystem, NodeColumn, WorstCaseSystem};
use crate::model::{Network, Schedule};
use crate::solver::{Certificate, SolveOutcome};
use crate::verify::{BestRecord, ScenarioRecord, VerificationReport, WorstRecord};

/// Renders the report. `elapsed` adds a timing field; leave it out for
/// byte-identical output across runs.
pub fn report_json(report: &VerificationReport, network: &Network, schedule: &Schedule, elapsed: Option<f64>) -> Value {
    let node_name = |v: crate::model::NodeId| network.node(v).name.clone();
    let mut root = Map::new();
    root.insert("mode".into(), json!(report.mode));
    root.insert("semantics".into(), json!(report.semantics.name()));
    root.insert("safe".into(), json!(report.is_safe()));
    root.insert("worst_case_safe".into(), json!(report.worst));
    root.insert("best_case_safe".into(), json!(report.best));
    root.insert(
        "nodes".into(),
        Value::Array(
            report
                .nodes
                .iter()
                .map(|n| {
                    json!({
                        "node": node_name(n.node),
                        "source": n.source,
                        "scenarios": n.scenarios,
                        "worst_case_safe": n.worst,
                        "best_case_safe": n.best,
                    })
                })
                .collect(),
        ),
    );
    root.insert(
        "scenarios".into(),
        Value::Array(report.scenarios.iter().map(|s| scenario_json(s, network, schedule)).collect()),
    );
    if let Some(secs) = elapsed {
        root.insert("elapsed_seconds".into(), json!(secs));
    }
    Value::Object(root)
}

pub fn scenario_json(record: &ScenarioRecord, network: &Network, schedule: &Schedule) -> Value {
    let mut obj = Map::new();
    obj.insert("closed".into(), json!(network.node(record.closed).name));
    obj.insert("time".into(), json!(record.time));
    if let Some(w) = &record.worst {
        obj.insert("worst".into(), worst_json(w, network, schedule));
    }
    if let Some(b) = &record.best {
        obj.insert("best".into(), best_json(b, network, schedule));
    }
    Value::Object(obj)
}

fn columns_json(columns: &[NodeColumn], network: &Network) -> Value {
    Value::Array(
        columns
            .iter()
            .filter(|c| c.unaffected_peak > 0 || c.fixed_inbound > 0)
            .map(|c| {
                json!({
                    "node": network.node(c.node).name,
                    "capacity": c.capacity,
                    "unaffected_peak": c.unaffected_peak,
                    "fixed_inbound": c.fixed_inbound,
                })
            })
            .collect(),
    )
}

fn worst_json(rec: &WorstRecord, network: &Network, schedule: &Schedule) -> Value {
    let sys: &WorstCaseSystem = &rec.system;
    let flight = |j: &crate::model::FlightId| schedule.flight(*j).name.clone();
    let rows: Vec<String> = sys.rows.iter().map(|r| network.link(r.link).name.clone()).collect();
    let mut obj = Map::new();
    obj.insert("safe".into(), json!(rec.outcome.is_feasible()));
    obj.insert(
        "rows".into(),
        Value::Array(
            sys.rows
                .iter()
                .filter(|r| r.supply() > 0)
                .map(|r| {
                    json!({
                        "link": network.link(r.link).name,
                        "flights": r.flights.iter().map(flight).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        ),
    );
    obj.insert(
        "fixed".into(),
        Value::Array(
            sys.fixed
                .iter()
                .map(|f| {
                    json!({
                        "link": network.link(f.link).name,
                        "node": network.node(f.node).name,
                        "flights": f.flights.iter().map(flight).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        ),
    );
    obj.insert("columns".into(), columns_json(&sys.columns, network));
    outcome_into(&mut obj, &rec.outcome, &rows, network, "link");
    Value::Object(obj)
}

fn best_json(rec: &BestRecord, network: &Network, schedule: &Schedule) -> Value {
    let sys: &BestCaseSystem = &rec.system;
    let rows: Vec<String> = sys.rows.iter().map(|r| schedule.flight(r.flight).name.clone()).collect();
    let mut obj = Map::new();
    obj.insert("safe".into(), json!(rec.outcome.is_feasible()));
    obj.insert("definitely_affected".into(), json!(rows));
    obj.insert("columns".into(), columns_json(&sys.columns, network));
    outcome_into(&mut obj, &rec.outcome, &rows, network, "flight");
    Value::Object(obj)
}

fn outcome_into(obj: &mut Map<String, Value>, outcome: &SolveOutcome, rows: &[String], network: &Network, row_key: &str) {
    let node = |c: usize| network.nodes()[c].name.clone();
    match outcome {
        SolveOutcome::Feasible { witness } => {
            let cells: Vec<Value> = witness
                .values
                .iter()
                .map(|(&(r, c), &v)| {
                    let mut cell = Map::new();
                    cell.insert(row_key.into(), json!(rows[r]));
                    cell.insert("node".into(), json!(node(c)));
                    cell.insert("count".into(), json!(v));
                    Value::Object(cell)
                })
                .collect();
            obj.insert("witness".into(), Value::Array(cells));
        }
        SolveOutcome::Infeasible { certificate } => {
            let cert = match certificate {
                Certificate::OvercommittedColumn { col, deficit } => json!({
                    "kind": "negative_residual",
                    "node": node(*col),
                    "deficit": deficit,
                }),
                Certificate::OvercommittedRow { row, excess } => json!({
                    "kind": "overcommitted_row",
                    row_key: rows[*row],
                    "excess": excess,
                }),
                Certificate::Hall {
                    rows: rs,
                    cols,
                    demand,
                    absorbable,
                } => json!({
                    "kind": "hall",
                    "rows": rs.iter().map(|&r| rows[r].clone()).collect::<Vec<_>>(),
                    "nodes": cols.iter().map(|&c| node(c)).collect::<Vec<_>>(),
                    "demand": demand,
                    "absorbable": absorbable,
                }),
            };
            obj.insert("certificate".into(), cert);
        }
    }
}

/// Pretty JSON text with a trailing newline.
pub fn render_report(report: &VerificationReport, network: &Network, schedule: &Schedule, elapsed: Option<f64>) -> String {
    let mut s = serde_json::to_string_pretty(&report_json(report, network, schedule, elapsed)).expect("json values serialize");
    s.push('\n');
    s
}

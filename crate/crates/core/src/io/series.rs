//! Tab-separated worst-case occupancy series, one row per critical time.
//!
//! Node series columns: `t_c`, `unaffected` (`N_R`), one `fixed:<link>` per
//! inbound link that is not rerouted, one `var:<link>` per rerouted link that
//! may land here, `capacity`, `verdict`. Stacking `unaffected`, the fixed and
//! the variable columns never exceeds `capacity` on `safe` rows. When a
//! scenario is infeasible its variable cells read `-` and `verdict` reads
//! [`INFEASIBLE`].
//!
//! Link series columns: `t_c`, `supply`, one `to:<node>` per reachable
//! backup, `verdict`.

use std::fmt::Write as _;

use crate::closure::critical_times;
use crate::model::{LinkId, NodeId};
use crate::verify::{Mode, Verifier};
use crate::time::Time;

pub const INFEASIBLE: &str = "infeasible";
pub const SAFE: &str = "safe";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesTarget {
    Node(NodeId),
    Link(LinkId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Series {
    pub fn to_tsv(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// Worst-case decomposition at `target` for closures of `closed`.
pub fn occupancy_series(verifier: &Verifier<'_>, closed: NodeId, target: SeriesTarget) -> Series {
    let net = verifier.network();
    let ctx = verifier.context(closed);
    let times = critical_times(&ctx);
    match target {
        SeriesTarget::Node(v) => {
            let fixed_links: Vec<LinkId> = if v == closed {
                Vec::new()
            } else {
                net.inbound(v).to_vec()
            };
            let var_links: Vec<LinkId> = ctx
                .reroute_links(v)
                .iter()
                .copied()
                .filter(|e| ctx.affected_links().contains(e))
                .collect();
            let mut header = vec!["t_c".to_string(), "unaffected".to_string()];
            header.extend(fixed_links.iter().map(|&e| format!("fixed:{}", net.link(e).name)));
            header.extend(var_links.iter().map(|&e| format!("var:{}", net.link(e).name)));
            header.push("capacity".into());
            header.push("verdict".into());
            let rows = times
                .iter()
                .map(|&t| {
                    let record = verifier_worst(verifier, &ctx, t);
                    let sys = &record.system;
                    let col = &sys.columns[v.index()];
                    let mut row = vec![t.to_string(), col.unaffected_peak.to_string()];
                    for &e in &fixed_links {
                        let n = sys.fixed.iter().find(|f| f.link == e).map_or(0, |f| f.flights.len());
                        row.push(n.to_string());
                    }
                    let witness = record.outcome.witness();
                    for &e in &var_links {
                        row.push(match witness {
                            Some(w) => {
                                let r = sys.row_of(e).expect("affected link has a row");
                                w.get(r, v.index()).to_string()
                            }
                            None => "-".into(),
                        });
                    }
                    row.push(col.capacity.to_string());
                    row.push(if witness.is_some() { SAFE } else { INFEASIBLE }.into());
                    row
                })
                .collect();
            Series { header, rows }
        }
        SeriesTarget::Link(e) => {
            let targets = ctx.reachable_backups(e).to_vec();
            let mut header = vec!["t_c".to_string(), "supply".to_string()];
            header.extend(targets.iter().map(|&v| format!("to:{}", net.node(v).name)));
            header.push("verdict".into());
            let rows = times
                .iter()
                .map(|&t| {
                    let record = verifier_worst(verifier, &ctx, t);
                    let sys = &record.system;
                    let r = sys.row_of(e);
                    let supply = r.map_or(0, |r| sys.rows[r].supply());
                    let mut row = vec![t.to_string(), supply.to_string()];
                    let witness = record.outcome.witness();
                    for &v in &targets {
                        row.push(match (witness, r) {
                            (Some(w), Some(r)) => w.get(r, v.index()).to_string(),
                            (Some(_), None) => "0".into(),
                            (None, _) => "-".into(),
                        });
                    }
                    row.push(if witness.is_some() { SAFE } else { INFEASIBLE }.into());
                    row
                })
                .collect();
            Series { header, rows }
        }
    }
}

fn verifier_worst(verifier: &Verifier<'_>, ctx: &crate::closure::ClosureContext<'_>, t: Time) -> crate::verify::WorstRecord {
    verifier
        .evaluate_mode(ctx, t, Mode::Worst)
        .worst
        .expect("worst mode yields a worst-case record")
}

/// Human-readable summary: one line per unsafe stretch of closure times.
pub fn unsafe_stretches(series: &Series) -> String {
    let verdict = series.header.len() - 1;
    let mut out = String::new();
    let mut start: Option<&str> = None;
    let mut last = "";
    for row in &series.rows {
        let bad = row[verdict] == INFEASIBLE;
        match (bad, start) {
            (true, None) => start = Some(&row[0]),
            (false, Some(s)) => {
                let _ = writeln!(out, "unsafe from t_c = {s} to {last}");
                start = None;
            }
            _ => {}
        }
        last = &row[0];
    }
    if let Some(s) = start {
        let _ = writeln!(out, "unsafe from t_c = {s} to {last}");
    }
    out
}

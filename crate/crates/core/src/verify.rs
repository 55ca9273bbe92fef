//! Scenario sweeps over closure times and closed nodes.
//!
//! A node is node-conditionally safe when every scenario at its critical
//! times is feasible; the schedule is 1-closure safe when every node is.
//! Source nodes are skipped in the all-nodes sweep since closing one only
//! cancels departures.

use std::collections::BTreeMap;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::closure::{
    build_best_case_with, build_worst_case_with, critical_times, derive_scenario, unaffected_peaks, BestCaseSystem,
    ClosureContext, WorstCaseSystem,
};
use crate::model::{compute_timelines, FlightTimeline, Network, NodeId, Schedule, Semantics};
use crate::oracle::{choices_from_witness, sample_realization, simulate_closure, Realization, Violation};
use crate::solver::{solve, SolveOutcome};
use crate::time::Time;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Worst,
    Best,
    #[default]
    Both,
}

impl Mode {
    pub fn worst(self) -> bool {
        matches!(self, Mode::Worst | Mode::Both)
    }

    pub fn best(self) -> bool {
        matches!(self, Mode::Best | Mode::Both)
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "worst" => Ok(Mode::Worst),
            "best" => Ok(Mode::Best),
            "both" => Ok(Mode::Both),
            other => Err(format!("unknown mode `{other}` (expected worst, best or both)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// One closure instant at one node.
    TimeNode(NodeId, Time),
    /// Every critical time of one node.
    Node(NodeId),
    /// Every non-source node.
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WorstRecord {
    pub system: WorstCaseSystem,
    pub outcome: SolveOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BestRecord {
    pub system: BestCaseSystem,
    pub outcome: SolveOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioRecord {
    pub closed: NodeId,
    pub time: Time,
    pub worst: Option<WorstRecord>,
    pub best: Option<BestRecord>,
}

impl ScenarioRecord {
    pub fn worst_safe(&self) -> Option<bool> {
        self.worst.as_ref().map(|r| r.outcome.is_feasible())
    }

    pub fn best_safe(&self) -> Option<bool> {
        self.best.as_ref().map(|r| r.outcome.is_feasible())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeVerdict {
    pub node: NodeId,
    /// Skipped as a source; verdicts are then `true`.
    pub source: bool,
    pub scenarios: usize,
    pub worst: Option<bool>,
    pub best: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub mode: Mode,
    pub semantics: Semantics,
    pub nodes: Vec<NodeVerdict>,
    /// Ordered by node, then time.
    pub scenarios: Vec<ScenarioRecord>,
    pub worst: Option<bool>,
    pub best: Option<bool>,
}

impl VerificationReport {
    /// Safe in every requested mode.
    pub fn is_safe(&self) -> bool {
        self.worst != Some(false) && self.best != Some(false)
    }

    pub fn node(&self, node: NodeId) -> Option<&NodeVerdict> {
        self.nodes.iter().find(|n| n.node == node)
    }

    pub fn scenarios_for(&self, node: NodeId) -> impl Iterator<Item = &ScenarioRecord> {
        self.scenarios.iter().filter(move |s| s.closed == node)
    }
}

/// Verdict counts from a sweep that keeps no records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SweepSummary {
    pub scenarios: usize,
    pub worst_unsafe: usize,
    pub best_unsafe: usize,
}

pub struct Verifier<'a> {
    network: &'a Network,
    schedule: &'a Schedule,
    timelines: Vec<FlightTimeline>,
    semantics: Semantics,
    mode: Mode,
    jobs: usize,
}

impl<'a> Verifier<'a> {
    pub fn new(network: &'a Network, schedule: &'a Schedule) -> Self {
        Verifier {
            network,
            schedule,
            timelines: compute_timelines(network, schedule),
            semantics: Semantics::default(),
            mode: Mode::default(),
            jobs: 1,
        }
    }

    pub fn semantics(mut self, semantics: Semantics) -> Self {
        self.semantics = semantics;
        self
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    /// Worker threads; 0 uses all cores.
    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn network(&self) -> &Network {
        self.network
    }

    pub fn schedule(&self) -> &Schedule {
        self.schedule
    }

    pub fn timelines(&self) -> &[FlightTimeline] {
        &self.timelines
    }

    pub fn context(&self, closed: NodeId) -> ClosureContext<'_> {
        ClosureContext::new(self.network, self.schedule, &self.timelines, closed, self.semantics)
    }

    /// Critical closure times of `closed`.
    pub fn critical_times(&self, closed: NodeId) -> Vec<Time> {
        critical_times(&self.context(closed))
    }

    pub fn evaluate(&self, ctx: &ClosureContext<'_>, time: Time) -> ScenarioRecord {
        self.evaluate_mode(ctx, time, self.mode)
    }

    pub fn evaluate_mode(&self, ctx: &ClosureContext<'_>, time: Time, mode: Mode) -> ScenarioRecord {
        let scenario = derive_scenario(ctx, time);
        let peaks = unaffected_peaks(ctx, time);
        let worst = mode.worst().then(|| {
            let system = build_worst_case_with(ctx, &scenario, &peaks);
            let outcome = solve(&system.to_instance()).expect("closure systems are well formed");
            WorstRecord { system, outcome }
        });
        let best = mode.best().then(|| {
            let system = build_best_case_with(ctx, &scenario, &peaks);
            let outcome = solve(&system.to_instance()).expect("closure systems are well formed");
            BestRecord { system, outcome }
        });
        ScenarioRecord {
            closed: ctx.closed(),
            time,
            worst,
            best,
        }
    }

    /// Convenience for a single closure instant.
    pub fn evaluate_at(&self, closed: NodeId, time: Time) -> ScenarioRecord {
        self.evaluate(&self.context(closed), time)
    }

    fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .expect("thread pool")
    }

    fn nodes_in(&self, scope: Scope) -> Vec<(NodeId, Option<Time>)> {
        match scope {
            Scope::TimeNode(v, t) => vec![(v, Some(t))],
            Scope::Node(v) => vec![(v, None)],
            Scope::All => self.network.node_ids().map(|v| (v, None)).collect(),
        }
    }

    pub fn verify(&self, scope: Scope) -> VerificationReport {
        let pool = self.pool();
        let mut nodes = Vec::new();
        let mut scenarios = Vec::new();
        for (v, time) in self.nodes_in(scope) {
            if scope == Scope::All && self.network.is_source(v) {
                nodes.push(NodeVerdict {
                    node: v,
                    source: true,
                    scenarios: 0,
                    worst: self.mode.worst().then_some(true),
                    best: self.mode.best().then_some(true),
                });
                continue;
            }
            let ctx = self.context(v);
            let times = time.map_or_else(|| critical_times(&ctx), |t| vec![t]);
            let records: Vec<ScenarioRecord> =
                pool.install(|| times.par_iter().map(|&t| self.evaluate(&ctx, t)).collect());
            nodes.push(NodeVerdict {
                node: v,
                source: false,
                scenarios: records.len(),
                worst: self
                    .mode
                    .worst()
                    .then(|| records.iter().all(|r| r.worst_safe() == Some(true))),
                best: self
                    .mode
                    .best()
                    .then(|| records.iter().all(|r| r.best_safe() == Some(true))),
            });
            scenarios.extend(records);
        }
        let worst = self.mode.worst().then(|| nodes.iter().all(|n| n.worst == Some(true)));
        let best = self.mode.best().then(|| nodes.iter().all(|n| n.best == Some(true)));
        VerificationReport {
            mode: self.mode,
            semantics: self.semantics,
            nodes,
            scenarios,
            worst,
            best,
        }
    }

    /// Same sweep as [`Verifier::verify`], counting verdicts only.
    pub fn sweep(&self, scope: Scope) -> SweepSummary {
        let pool = self.pool();
        let mut summary = SweepSummary::default();
        for (v, time) in self.nodes_in(scope) {
            if scope == Scope::All && self.network.is_source(v) {
                continue;
            }
            let ctx = self.context(v);
            let times = time.map_or_else(|| critical_times(&ctx), |t| vec![t]);
            let (w, b) = pool.install(|| {
                times
                    .par_iter()
                    .map(|&t| {
                        let r = self.evaluate(&ctx, t);
                        (
                            (r.worst_safe() == Some(false)) as usize,
                            (r.best_safe() == Some(false)) as usize,
                        )
                    })
                    .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
            });
            summary.scenarios += times.len();
            summary.worst_unsafe += w;
            summary.best_unsafe += b;
        }
        summary
    }

    /// Drives every worst-case safe scenario of `closed` with `samples`
    /// realizations, diverting flights as the witness says.
    pub fn monte_carlo(&self, closed: NodeId, samples: usize, seed: u64) -> MonteCarloReport {
        let realizations: Vec<Realization> = (0..samples as u64)
            .map(|k| sample_realization(self.network, self.schedule, seed.wrapping_add(k)))
            .collect();
        let ctx = self.context(closed);
        let times = critical_times(&ctx);
        let pool = self.pool();
        let per_time: Vec<(bool, usize, Vec<MonteCarloFailure>)> = pool.install(|| {
            times
                .par_iter()
                .map(|&t| {
                    let record = self.evaluate_mode(&ctx, t, Mode::Worst);
                    let worst = record.worst.expect("worst mode");
                    let Some(witness) = worst.outcome.witness() else {
                        return (false, 0, Vec::new());
                    };
                    let choice = choices_from_witness(&worst.system, witness);
                    let mut failures = Vec::new();
                    for (k, r) in realizations.iter().enumerate() {
                        let trace = simulate_closure(self.network, self.schedule, r, closed, t, &choice, self.semantics)
                            .expect("witness choices target open backups");
                        if let Some(v) = trace.violations.first() {
                            failures.push(MonteCarloFailure {
                                time: t,
                                sample: k,
                                violation: *v,
                            });
                        }
                    }
                    (true, realizations.len(), failures)
                })
                .collect()
        });
        let mut report = MonteCarloReport {
            closed,
            scenarios: times.len(),
            safe_scenarios: 0,
            simulations: 0,
            failures: Vec::new(),
        };
        for (safe, sims, failures) in per_time {
            report.safe_scenarios += safe as usize;
            report.simulations += sims;
            report.failures.extend(failures);
        }
        report
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonteCarloFailure {
    pub time: Time,
    pub sample: usize,
    pub violation: Violation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonteCarloReport {
    pub closed: NodeId,
    pub scenarios: usize,
    pub safe_scenarios: usize,
    pub simulations: usize,
    pub failures: Vec<MonteCarloFailure>,
}

/// Node-conditional worst-case verdicts keyed by node name, for quick checks.
pub fn worst_case_by_node(report: &VerificationReport, network: &Network) -> BTreeMap<String, Option<bool>> {
    report
        .nodes
        .iter()
        .map(|n| (network.node(n.node).name.clone(), n.worst))
        .collect()
}

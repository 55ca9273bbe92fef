//! Worst- and best-case constraint systems for one closure scenario.

use serde::Serialize;

use crate::closure::context::ClosureContext;
use crate::closure::occupancy::unaffected_peak;
use crate::closure::scenario::ClosureScenario;
use crate::model::{Capacity, FlightId, LinkId, NodeId};
use crate::solver::{Limit, TransportInstance};
use crate::time::Time;

/// Capacity bookkeeping for one node. Column index equals node index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeColumn {
    pub node: NodeId,
    pub capacity: Capacity,
    /// `N_R(v, t_c, v_c)`.
    pub unaffected_peak: u32,
    /// Flights pinned to this node by links outside `ℰ_{v_c}`.
    pub fixed_inbound: u32,
}

impl NodeColumn {
    /// `C_v − N_R − fixed`; `None` when unbounded.
    pub fn residual(&self) -> Option<i64> {
        self.capacity
            .finite()
            .map(|c| c as i64 - self.unaffected_peak as i64 - self.fixed_inbound as i64)
    }
}

/// A link into the closed node and the flights that must be rerouted from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkRow {
    pub link: LinkId,
    pub flights: Vec<FlightId>,
    /// `𝓑_{e,v_c}`.
    pub targets: Vec<NodeId>,
}

impl LinkRow {
    pub fn supply(&self) -> u32 {
        self.flights.len() as u32
    }
}

/// Flights counted at the head of a link outside `ℰ_{v_c}` (`N_{e,σ(e)}`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedInbound {
    pub link: LinkId,
    pub node: NodeId,
    pub flights: Vec<FlightId>,
}

/// A flight whose window into the closed node overlaps the window of an
/// earlier link into one of its backups; it is counted there instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoveredFlight {
    pub flight: FlightId,
    pub link: LinkId,
    pub node: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WorstCaseSystem {
    pub closed: NodeId,
    pub time: Time,
    pub rows: Vec<LinkRow>,
    pub columns: Vec<NodeColumn>,
    /// In link order; only links with at least one flight.
    pub fixed: Vec<FixedInbound>,
    pub covered: Vec<CoveredFlight>,
}

impl WorstCaseSystem {
    /// Finite-capacity nodes already over capacity before any rerouting.
    pub fn negative_residuals(&self) -> Vec<NodeId> {
        self.columns
            .iter()
            .filter(|c| c.residual().is_some_and(|r| r < 0))
            .map(|c| c.node)
            .collect()
    }

    pub fn row_of(&self, link: LinkId) -> Option<usize> {
        self.rows.iter().position(|r| r.link == link)
    }

    pub fn to_instance(&self) -> TransportInstance {
        let mut inst = TransportInstance::new(
            self.rows.iter().map(|r| r.supply() as u64).collect(),
            self.columns.iter().map(|c| limit(c.capacity)).collect(),
        );
        for (r, row) in self.rows.iter().enumerate() {
            for v in &row.targets {
                inst.allow(r, v.index(), Limit::Unbounded);
            }
        }
        for c in &self.columns {
            if c.unaffected_peak > 0 {
                inst.fix(None, c.node.index(), c.unaffected_peak as u64);
            }
        }
        for f in &self.fixed {
            inst.fix(None, f.node.index(), f.flights.len() as u64);
        }
        inst
    }
}

/// A definitely affected flight and the nodes it may still reach.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlightRow {
    pub flight: FlightId,
    pub targets: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BestCaseSystem {
    pub closed: NodeId,
    pub time: Time,
    pub rows: Vec<FlightRow>,
    pub columns: Vec<NodeColumn>,
}

impl BestCaseSystem {
    /// Definitely affected flights with nowhere to go.
    pub fn isolated(&self) -> Vec<FlightId> {
        self.rows.iter().filter(|r| r.targets.is_empty()).map(|r| r.flight).collect()
    }

    pub fn to_instance(&self) -> TransportInstance {
        let mut inst = TransportInstance::new(
            vec![1; self.rows.len()],
            self.columns.iter().map(|c| limit(c.capacity)).collect(),
        );
        for (r, row) in self.rows.iter().enumerate() {
            for v in &row.targets {
                inst.allow(r, v.index(), Limit::Finite(1));
            }
        }
        for c in &self.columns {
            if c.unaffected_peak > 0 {
                inst.fix(None, c.node.index(), c.unaffected_peak as u64);
            }
        }
        inst
    }
}

fn limit(c: Capacity) -> Limit {
    match c {
        Capacity::Finite(v) => Limit::Finite(v as u64),
        Capacity::Unbounded => Limit::Unbounded,
    }
}

/// `N_R` for every node at `time`.
pub fn unaffected_peaks(ctx: &ClosureContext<'_>, time: Time) -> Vec<u32> {
    ctx.network.node_ids().map(|v| unaffected_peak(ctx, v, time)).collect()
}

pub fn build_worst_case_system(ctx: &ClosureContext<'_>, scenario: &ClosureScenario) -> WorstCaseSystem {
    let peaks = unaffected_peaks(ctx, scenario.time);
    build_worst_case_with(ctx, scenario, &peaks)
}

pub fn build_best_case_system(ctx: &ClosureContext<'_>, scenario: &ClosureScenario) -> BestCaseSystem {
    let peaks = unaffected_peaks(ctx, scenario.time);
    build_best_case_with(ctx, scenario, &peaks)
}

/// As [`build_worst_case_system`] with precomputed [`unaffected_peaks`].
pub fn build_worst_case_with(ctx: &ClosureContext<'_>, scenario: &ClosureScenario, peaks: &[u32]) -> WorstCaseSystem {
    let net = ctx.network;
    let tc = scenario.time;
    let closed = ctx.closed;
    let mut rows: Vec<LinkRow> = ctx
        .affected_links
        .iter()
        .map(|&e| LinkRow {
            link: e,
            flights: Vec::new(),
            targets: ctx.reachable_backups[e.index()].clone(),
        })
        .collect();
    let mut fixed: Vec<Vec<FlightId>> = vec![Vec::new(); net.links().len()];
    let mut covered = Vec::new();

    for &j in &scenario.rerouting {
        let p = ctx.position[j.index()].expect("rerouting flights visit the closed node");
        let tl = &ctx.timelines[j.index()];
        let route = net.route(net_route(ctx, j));
        // Earlier links hold the flight at their head.
        for k in 1..p {
            if tl.worst_window(k, closed).contains(tc) {
                fixed[route.link_at(k).index()].push(j);
            }
        }
        if !tl.worst_window(p, closed).contains(tc) {
            continue;
        }
        let cover = ctx.earlier_positions[j.index()]
            .iter()
            .copied()
            .find(|&l| tl.worst_window(l, closed).contains(tc));
        match cover {
            Some(l) => covered.push(CoveredFlight {
                flight: j,
                link: route.link_at(l),
                node: tl.stop(l).node,
            }),
            None => {
                let e = route.link_at(p);
                let r = ctx.row_of[e.index()].expect("link into the closed node has a row");
                rows[r].flights.push(j);
            }
        }
    }

    let mut fixed_inbound = vec![0u32; net.nodes().len()];
    let fixed: Vec<FixedInbound> = fixed
        .into_iter()
        .enumerate()
        .filter(|(_, f)| !f.is_empty())
        .map(|(e, flights)| {
            let node = net.link(LinkId(e)).head;
            fixed_inbound[node.index()] += flights.len() as u32;
            FixedInbound {
                link: LinkId(e),
                node,
                flights,
            }
        })
        .collect();
    let columns = columns(ctx, peaks, &fixed_inbound);
    WorstCaseSystem {
        closed,
        time: tc,
        rows,
        columns,
        fixed,
        covered,
    }
}

/// As [`build_best_case_system`] with precomputed [`unaffected_peaks`].
pub fn build_best_case_with(ctx: &ClosureContext<'_>, scenario: &ClosureScenario, peaks: &[u32]) -> BestCaseSystem {
    let net = ctx.network;
    let tc = scenario.time;
    let rows = scenario
        .definitely_affected
        .iter()
        .map(|&j| {
            let p = ctx.position[j.index()].expect("affected flights visit the closed node");
            let tl = &ctx.timelines[j.index()];
            let route = net.route(net_route(ctx, j));
            let mut targets: Vec<NodeId> = (1..=p)
                .filter(|&k| tl.best_window(k, ctx.closed).contains(tc))
                .flat_map(|k| ctx.reachable_backups[route.link_at(k).index()].iter().copied())
                .collect();
            targets.sort_unstable();
            targets.dedup();
            FlightRow { flight: j, targets }
        })
        .collect();
    let zero = vec![0; net.nodes().len()];
    BestCaseSystem {
        closed: ctx.closed,
        time: tc,
        rows,
        columns: columns(ctx, peaks, &zero),
    }
}

fn net_route(ctx: &ClosureContext<'_>, j: FlightId) -> crate::model::RouteId {
    ctx.routes[j.index()]
}

fn columns(ctx: &ClosureContext<'_>, peaks: &[u32], fixed_inbound: &[u32]) -> Vec<NodeColumn> {
    ctx.network
        .node_ids()
        .map(|v| NodeColumn {
            node: v,
            capacity: ctx.network.capacity(v),
            unaffected_peak: peaks[v.index()],
            fixed_inbound: fixed_inbound[v.index()],
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::scenario::derive_scenario;
    use crate::fixtures;
    use crate::model::{compute_timelines, Network, Schedule, Semantics};
    use crate::solver::{solve, Certificate};

    fn t(u: i64) -> Time {
        Time::from_units(u)
    }

    struct Setup {
        net: Network,
        sched: Schedule,
    }

    fn example2(cap_v2: u32, cap_v3: u32, d3: i64) -> Setup {
        let net = fixtures::example2_network(cap_v2, cap_v3);
        let sched = fixtures::example2_schedule(&net, t(d3));
        Setup { net, sched }
    }

    fn worst(s: &Setup, node: &str, tc: Time) -> WorstCaseSystem {
        let tls = compute_timelines(&s.net, &s.sched);
        let ctx = ClosureContext::new(&s.net, &s.sched, &tls, s.net.node_by_name(node).unwrap(), Semantics::RightOpen);
        build_worst_case_system(&ctx, &derive_scenario(&ctx, tc))
    }

    fn best(s: &Setup, node: &str, tc: Time) -> BestCaseSystem {
        let tls = compute_timelines(&s.net, &s.sched);
        let ctx = ClosureContext::new(&s.net, &s.sched, &tls, s.net.node_by_name(node).unwrap(), Semantics::RightOpen);
        build_best_case_system(&ctx, &derive_scenario(&ctx, tc))
    }

    #[test]
    fn example_two_late_third_flight_is_infeasible() {
        let s = example2(2, 1, 10);
        let sys = worst(&s, "v4", t(15));
        let e3 = s.net.link_by_name("e3").unwrap();
        let (v2, v3) = (s.net.node_by_name("v2").unwrap(), s.net.node_by_name("v3").unwrap());
        assert_eq!(sys.rows.len(), 1);
        assert_eq!(sys.rows[0].link, e3);
        assert_eq!(sys.rows[0].flights, vec![FlightId(0)]);
        assert_eq!(sys.rows[0].targets, vec![v2, v3]);
        assert_eq!(sys.columns[v2.index()].unaffected_peak, 1);
        assert_eq!(sys.columns[v2.index()].fixed_inbound, 1);
        assert_eq!(sys.columns[v2.index()].residual(), Some(0));
        assert_eq!(sys.columns[v3.index()].residual(), Some(0));
        let inst = sys.to_instance();
        let cert = solve(&inst).unwrap().certificate().cloned().unwrap();
        assert_eq!(
            cert,
            Certificate::Hall {
                rows: vec![0],
                cols: vec![v2.index(), v3.index()],
                demand: 1,
                absorbable: 0
            }
        );
    }

    #[test]
    fn example_two_early_third_flight_is_feasible() {
        let s = example2(2, 1, 0);
        let sys = worst(&s, "v4", t(15));
        let v2 = s.net.node_by_name("v2").unwrap();
        assert_eq!(sys.columns[v2.index()].residual(), Some(1));
        let out = solve(&sys.to_instance()).unwrap();
        assert_eq!(out.witness().unwrap().get(0, v2.index()), 1);
    }

    #[test]
    fn no_rerouting_flights_gives_zero_supplies() {
        let s = example2(2, 1, 10);
        let sys = worst(&s, "v4", t(40));
        assert!(sys.rows.iter().all(|r| r.supply() == 0));
        let out = solve(&sys.to_instance()).unwrap();
        assert!(out.witness().unwrap().values.is_empty());
    }

    #[test]
    fn best_case_sends_second_flight_to_v2() {
        for d3 in 0..=12 {
            let s = example2(2, 1, d3);
            let sys = best(&s, "v4", t(15));
            let v2 = s.net.node_by_name("v2").unwrap();
            assert_eq!(sys.rows.len(), 1);
            assert_eq!(sys.rows[0].flight, FlightId(1));
            assert!(sys.rows[0].targets.contains(&v2));
            let out = solve(&sys.to_instance()).unwrap();
            assert_eq!(out.witness().unwrap().get(0, v2.index()), 1, "delta3 = {d3}");
        }
    }

    #[test]
    fn best_case_isolated_flight() {
        // One flight on a->b with b closed: its only backup is a, which has capacity 0.
        let net = crate::NetworkSpec::new(t(1))
            .node("a", Capacity::Finite(0))
            .node("b", Capacity::Finite(1))
            .node("c", Capacity::Finite(1))
            .link("e", "a", "b", t(5), t(6), &["a", "b"])
            .link("f", "b", "c", t(1), t(1), &["b", "c"])
            .route("R", &["e", "f"])
            .build()
            .unwrap();
        let sched = crate::ScheduleSpec::new().flight("x", "R", t(0)).build(&net).unwrap();
        let s = Setup { net, sched };
        let sys = best(&s, "b", t(2));
        assert_eq!(sys.rows.len(), 1);
        let out = solve(&sys.to_instance()).unwrap();
        assert!(!out.is_feasible());

        let sys = best(&s, "c", t(20));
        assert!(sys.rows.is_empty());
    }

    #[test]
    fn isolated_row_reported() {
        let sys = BestCaseSystem {
            closed: NodeId(0),
            time: t(0),
            rows: vec![FlightRow {
                flight: FlightId(3),
                targets: vec![],
            }],
            columns: vec![],
        };
        assert_eq!(sys.isolated(), vec![FlightId(3)]);
    }
}

//! Realization sampling and the closure rules applied to one realization.
//!
//! At the closure instant a flight is affected when its route visits the
//! closed node and it has not landed there yet. Affected flights that have
//! not departed are canceled. Affected flights on a link into an open node,
//! or parked at a node, land or stay there and hold indefinitely. Affected
//! flights on the link into the closed node divert to a chosen backup, which
//! they occupy from the closure instant on. Everyone else flies as planned.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closure::WorstCaseSystem;
use crate::error::SimulationError;
use crate::model::{peak_overlap, FlightId, LinkId, Network, NodeId, Schedule, Semantics};
use crate::solver::Witness;
use crate::time::Time;

/// Probability of drawing each bound of a travel-time interval exactly.
const ENDPOINT_PROBABILITY: f64 = 0.1;

/// Travel time of every flight on every link of its route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realization {
    /// `travel[j][ℓ - 1]` is flight `j`'s time on its `ℓ`-th link.
    pub travel: Vec<Vec<Time>>,
}

impl Realization {
    /// Realized arrival times at route positions `1..=k`.
    pub fn arrivals(&self, network: &Network, schedule: &Schedule, flight: FlightId) -> Vec<Time> {
        let w = network.service_time();
        let mut t = schedule.flight(flight).departure;
        self.travel[flight.index()]
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                if i > 0 {
                    t += w;
                }
                t += x;
                t
            })
            .collect()
    }
}

/// Independent travel times per flight and link, uniform over the interval
/// with each bound also drawn directly with small probability.
pub fn sample_realization(network: &Network, schedule: &Schedule, seed: u64) -> Realization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let travel = schedule
        .flights()
        .iter()
        .map(|f| {
            network
                .route(f.route)
                .links
                .iter()
                .map(|&e| {
                    let link = network.link(e);
                    let (lo, hi) = (link.min_travel.ticks(), link.max_travel.ticks());
                    let u: f64 = rng.gen();
                    let ticks = if u < ENDPOINT_PROBABILITY {
                        lo
                    } else if u < 2.0 * ENDPOINT_PROBABILITY {
                        hi
                    } else {
                        rng.gen_range(lo..=hi)
                    };
                    Time::from_ticks(ticks)
                })
                .collect()
        })
        .collect();
    Realization { travel }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FlightStatus {
    Unaffected,
    Canceled,
    /// Holds at `node` from `since` on.
    Held { node: NodeId, since: Time },
    /// Diverted from `link` to `node`.
    Rerouted { link: LinkId, node: NodeId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub node: NodeId,
    pub time: Time,
    pub occupancy: u32,
    pub capacity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimulationTrace {
    pub statuses: Vec<FlightStatus>,
    /// Per node, the occupancy after each change as `(time, count)`.
    pub occupancy: Vec<Vec<(Time, u32)>>,
    /// At most one per node: the first instant its capacity is exceeded.
    pub violations: Vec<Violation>,
    pub horizon: Time,
}

impl SimulationTrace {
    pub fn is_safe(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Where an in-flight flight stands at the closure instant.
enum Position {
    Canceled,
    Unaffected,
    /// Landed (or will land) at stop `pos` and stays.
    Hold { pos: usize },
    /// On the link into the closed node.
    Divert { pos: usize },
}

fn classify(arrivals: &[Time], departure: Time, w: Time, closed_pos: Option<usize>, time: Time) -> Position {
    let Some(p) = closed_pos else {
        return Position::Unaffected;
    };
    let reached = if p == 0 { departure } else { arrivals[p - 1] };
    if reached <= time {
        return Position::Unaffected;
    }
    if departure > time {
        return Position::Canceled;
    }
    let landed = arrivals.iter().take_while(|&&a| a <= time).count();
    if landed >= 1 && arrivals[landed - 1] + w > time {
        return Position::Hold { pos: landed };
    }
    if landed + 1 == p {
        Position::Divert { pos: p }
    } else {
        Position::Hold { pos: landed + 1 }
    }
}

/// Flights that must divert at `(closed, time)` under this realization, with
/// the nodes they may divert to.
pub fn reroute_options(
    network: &Network,
    schedule: &Schedule,
    realization: &Realization,
    closed: NodeId,
    time: Time,
) -> Vec<(FlightId, Vec<NodeId>)> {
    let w = network.service_time();
    schedule
        .ids()
        .filter_map(|j| {
            let f = schedule.flight(j);
            let route = network.route(f.route);
            let arrivals = realization.arrivals(network, schedule, j);
            match classify(&arrivals, f.departure, w, route.position_of(closed), time) {
                Position::Divert { pos } => {
                    let link = network.link(route.link_at(pos));
                    Some((j, link.backups.iter().copied().filter(|&v| v != closed).collect()))
                }
                _ => None,
            }
        })
        .collect()
}

/// Applies the closure of `closed` at `time` to one realization.
///
/// `choice` gives the diversion target of every flight that needs one; other
/// entries are ignored.
pub fn simulate_closure(
    network: &Network,
    schedule: &Schedule,
    realization: &Realization,
    closed: NodeId,
    time: Time,
    choice: &BTreeMap<FlightId, NodeId>,
    semantics: Semantics,
) -> Result<SimulationTrace, SimulationError> {
    let w = network.service_time();
    let max_travel = network.links().iter().map(|l| l.max_travel).max().unwrap_or(Time::ZERO);
    let all_arrivals: Vec<Vec<Time>> = schedule.ids().map(|j| realization.arrivals(network, schedule, j)).collect();
    let last_event = all_arrivals
        .iter()
        .flat_map(|a| a.iter().copied())
        .chain(schedule.flights().iter().map(|f| f.departure))
        .chain(std::iter::once(time))
        .max()
        .unwrap_or(time);
    let horizon = last_event + w + max_travel;

    let mut intervals: Vec<Vec<(Time, Time)>> = vec![Vec::new(); network.nodes().len()];
    let mut statuses = Vec::with_capacity(schedule.len());
    for (j, arrivals) in all_arrivals.iter().enumerate() {
        let f = &schedule.flights()[j];
        let route = network.route(f.route);
        let mut visit = |pos: usize, lo: Time, hi: Time| intervals[route.nodes[pos].index()].push((lo, hi));
        let status = match classify(arrivals, f.departure, w, route.position_of(closed), time) {
            Position::Unaffected => {
                for (i, &a) in arrivals.iter().enumerate() {
                    visit(i + 1, a, a + w);
                }
                FlightStatus::Unaffected
            }
            Position::Canceled => FlightStatus::Canceled,
            Position::Hold { pos } => {
                for (i, &a) in arrivals[..pos - 1].iter().enumerate() {
                    visit(i + 1, a, a + w);
                }
                let since = arrivals[pos - 1];
                visit(pos, since, horizon);
                FlightStatus::Held {
                    node: route.nodes[pos],
                    since,
                }
            }
            Position::Divert { pos } => {
                for (i, &a) in arrivals[..pos - 1].iter().enumerate() {
                    visit(i + 1, a, a + w);
                }
                let e = route.link_at(pos);
                let target = *choice.get(&FlightId(j)).ok_or_else(|| SimulationError::InvalidChoice {
                    flight: f.name.clone(),
                    reason: "no diversion target given".into(),
                })?;
                if target == closed || !network.link(e).has_backup(target) {
                    return Err(SimulationError::InvalidChoice {
                        flight: f.name.clone(),
                        reason: format!(
                            "`{}` is not an open backup of link `{}`",
                            network.node(target).name,
                            network.link(e).name
                        ),
                    });
                }
                intervals[target.index()].push((time, horizon));
                FlightStatus::Rerouted { link: e, node: target }
            }
        };
        statuses.push(status);
    }

    let mut occupancy = Vec::with_capacity(intervals.len());
    let mut violations = Vec::new();
    for (v, iv) in intervals.iter().enumerate() {
        occupancy.push(step_series(iv, semantics));
        if let Some(cap) = network.capacity(NodeId(v)).finite() {
            let (peak, at) = peak_overlap(iv.iter().copied(), semantics, None);
            if peak > cap {
                violations.push(Violation {
                    node: NodeId(v),
                    time: at.expect("positive peak has a time"),
                    occupancy: peak,
                    capacity: cap,
                });
            }
        }
    }
    Ok(SimulationTrace {
        statuses,
        occupancy,
        violations,
        horizon,
    })
}

fn step_series(intervals: &[(Time, Time)], semantics: Semantics) -> Vec<(Time, u32)> {
    let (start, end) = match semantics {
        Semantics::RightOpen => (1u8, 0u8),
        Semantics::Closed => (0u8, 1u8),
    };
    let mut events: Vec<(Time, u8)> = intervals
        .iter()
        .filter(|(lo, hi)| semantics == Semantics::Closed || lo < hi)
        .flat_map(|&(lo, hi)| [(lo, start), (hi, end)])
        .collect();
    events.sort_unstable();
    let mut out: Vec<(Time, u32)> = Vec::new();
    let mut current: u32 = 0;
    for (t, kind) in events {
        if kind == start {
            current += 1;
        } else {
            current -= 1;
        }
        match out.last_mut() {
            Some(last) if last.0 == t => last.1 = current,
            _ => out.push((t, current)),
        }
    }
    out
}

/// Diversion targets read off a worst-case witness.
///
/// Flights counted at an earlier backup go there. The remaining flights of
/// each link row take the row's per-node counts in flight order.
pub fn choices_from_witness(system: &WorstCaseSystem, witness: &Witness) -> BTreeMap<FlightId, NodeId> {
    let mut out = BTreeMap::new();
    for c in &system.covered {
        out.insert(c.flight, c.node);
    }
    for (r, row) in system.rows.iter().enumerate() {
        let mut flights = row.flights.iter();
        for &v in &row.targets {
            for _ in 0..witness.get(r, v.index()) {
                if let Some(&j) = flights.next() {
                    out.insert(j, v);
                }
            }
        }
    }
    out
}

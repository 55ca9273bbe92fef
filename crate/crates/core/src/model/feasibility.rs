//! Nominal capacity check of a schedule by an endpoint sweep.

use serde::Serialize;

use crate::model::network::{Network, NodeId};
use crate::model::schedule::{FlightId, Schedule};
use crate::model::timeline::{compute_timelines, FlightTimeline, Semantics};
use crate::time::Time;

/// Largest number of intervals that simultaneously hold some instant `t >= from`.
///
/// Returns the peak and the first instant at which it is attained.
pub fn peak_overlap<I>(intervals: I, semantics: Semantics, from: Option<Time>) -> (u32, Option<Time>)
where
    I: IntoIterator<Item = (Time, Time)>,
{
    // Ends sort before starts under right-open semantics, after them when closed.
    let (start_key, end_key) = match semantics {
        Semantics::RightOpen => (1u8, 0u8),
        Semantics::Closed => (0u8, 1u8),
    };
    let mut events: Vec<(Time, u8)> = Vec::new();
    for (lo, hi) in intervals {
        let lo = match from {
            Some(f) => {
                if !semantics.reaches(hi, f) {
                    continue;
                }
                lo.max(f)
            }
            None => lo,
        };
        if semantics == Semantics::RightOpen && lo >= hi {
            continue;
        }
        events.push((lo, start_key));
        events.push((hi, end_key));
    }
    events.sort_unstable();
    let mut current: u32 = 0;
    let mut peak = 0;
    let mut at = None;
    for (t, key) in events {
        if key == start_key {
            current += 1;
            if current > peak {
                peak = current;
                at = Some(t);
            }
        } else {
            current -= 1;
        }
    }
    (peak, at)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapacityViolation {
    pub node: NodeId,
    pub time: Time,
    pub capacity: u32,
    pub flights: Vec<FlightId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// First violation found, scanning nodes in order.
    pub violation: Option<CapacityViolation>,
}

/// Nominal feasibility: at no node and no time does the number of potentially
/// present flights exceed the node's capacity.
pub fn check_feasible(network: &Network, schedule: &Schedule, semantics: Semantics) -> FeasibilityReport {
    let timelines = compute_timelines(network, schedule);
    check_feasible_with(network, &timelines, semantics)
}

pub fn check_feasible_with(
    network: &Network,
    timelines: &[FlightTimeline],
    semantics: Semantics,
) -> FeasibilityReport {
    let mut per_node: Vec<Vec<(Time, Time, FlightId)>> = vec![Vec::new(); network.nodes().len()];
    for (j, tl) in timelines.iter().enumerate() {
        for stop in &tl.stops {
            per_node[stop.node.index()].push((stop.earliest_arrival, stop.release, FlightId(j)));
        }
    }
    for v in network.node_ids() {
        let Some(cap) = network.capacity(v).finite() else {
            continue;
        };
        let intervals = &per_node[v.index()];
        let (peak, at) = peak_overlap(intervals.iter().map(|&(lo, hi, _)| (lo, hi)), semantics, None);
        if peak > cap {
            let time = at.expect("peak above zero has a time");
            let flights = intervals
                .iter()
                .filter(|&&(lo, hi, _)| semantics.contains(lo, hi, time))
                .map(|&(_, _, j)| j)
                .collect();
            return FeasibilityReport {
                feasible: false,
                violation: Some(CapacityViolation {
                    node: v,
                    time,
                    capacity: cap,
                    flights,
                }),
            };
        }
    }
    FeasibilityReport {
        feasible: true,
        violation: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::schedule::ScheduleSpec;

    fn t(u: i64) -> Time {
        Time::from_units(u)
    }

    #[test]
    fn example_two_schedule_is_feasible() {
        let net = fixtures::example2_network(2, 1);
        for d3 in 0..=12 {
            let s = fixtures::example2_schedule(&net, t(d3));
            assert!(check_feasible(&net, &s, Semantics::RightOpen).feasible, "delta3 = {d3}");
        }
    }

    #[test]
    fn single_flight_is_feasible() {
        let net = fixtures::example1_network();
        for r in ["R1", "R2", "R3"] {
            let s = ScheduleSpec::new().flight("f", r, t(3)).build(&net).unwrap();
            assert!(check_feasible(&net, &s, Semantics::RightOpen).feasible);
        }
    }

    #[test]
    fn three_identical_flights_overflow_capacity_two() {
        let net = fixtures::example2_network(2, 1);
        let s = ScheduleSpec::new()
            .flight("a", "R2", t(0))
            .flight("b", "R2", t(0))
            .flight("c", "R2", t(0))
            .build(&net)
            .unwrap();
        let report = check_feasible(&net, &s, Semantics::RightOpen);
        assert!(!report.feasible);
        let v = report.violation.unwrap();
        assert_eq!(net.node(v.node).name, "v2");
        assert_eq!(v.flights.len(), 3);
    }

    #[test]
    fn touching_intervals_depend_on_semantics() {
        let iv = [(t(0), t(2)), (t(2), t(4))];
        assert_eq!(peak_overlap(iv, Semantics::RightOpen, None).0, 1);
        assert_eq!(peak_overlap(iv, Semantics::Closed, None), (2, Some(t(2))));
    }

    #[test]
    fn clipping_ignores_earlier_overlap() {
        let iv = [(t(0), t(5)), (t(1), t(3)), (t(4), t(9))];
        assert_eq!(peak_overlap(iv, Semantics::RightOpen, None).0, 2);
        assert_eq!(peak_overlap(iv, Semantics::RightOpen, Some(t(3))), (2, Some(t(4))));
        assert_eq!(peak_overlap(iv, Semantics::RightOpen, Some(t(5))), (1, Some(t(5))));
        assert_eq!(peak_overlap(iv, Semantics::RightOpen, Some(t(9))).0, 0);
        assert_eq!(peak_overlap(iv, Semantics::Closed, Some(t(9))).0, 1);
    }
}

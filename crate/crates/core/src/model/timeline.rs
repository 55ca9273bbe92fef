//! Per-flight arrival bounds, occupancy intervals and rerouting windows.

use serde::{Deserialize, Serialize};

use crate::model::network::{LinkId, Network, NodeId};
use crate::model::schedule::{Flight, Schedule};
use crate::time::{Time, Window};

/// Boundary convention for occupancy intervals.
///
/// With `RightOpen` a flight that leaves a spot at `t` frees it for a flight
/// landing at `t`. `Closed` treats both ends as occupied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    #[default]
    RightOpen,
    Closed,
}

impl Semantics {
    #[inline]
    pub fn contains(self, lo: Time, hi: Time, t: Time) -> bool {
        match self {
            Semantics::RightOpen => lo <= t && t < hi,
            Semantics::Closed => lo <= t && t <= hi,
        }
    }

    /// Whether an interval ending at `hi` still occupies some instant `>= t`.
    #[inline]
    pub fn reaches(self, hi: Time, t: Time) -> bool {
        match self {
            Semantics::RightOpen => hi > t,
            Semantics::Closed => hi >= t,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Semantics::RightOpen => "right-open",
            Semantics::Closed => "closed",
        }
    }
}

impl std::str::FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "right-open" => Ok(Semantics::RightOpen),
            "closed" => Ok(Semantics::Closed),
            other => Err(format!("unknown semantics `{other}` (expected right-open or closed)")),
        }
    }
}

/// One landing along a route: the head of the link at the same position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stop {
    pub node: NodeId,
    /// Link flown to reach this stop.
    pub link: LinkId,
    /// Earliest possible arrival, `inf M`.
    pub earliest_arrival: Time,
    /// Latest possible arrival, `a`.
    pub latest_arrival: Time,
    /// Latest possible departure, `a + w` (`sup M`).
    pub release: Time,
}

impl Stop {
    pub fn occupancy(&self) -> (Time, Time) {
        (self.earliest_arrival, self.release)
    }
}

/// Arrival and occupancy bounds for one flight along its route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlightTimeline {
    pub departure: Time,
    /// Ground service time of the network.
    pub w: Time,
    /// Stops at positions `1..=k`; index `i` holds position `i + 1`.
    pub stops: Vec<Stop>,
}

impl FlightTimeline {
    pub fn compute(network: &Network, flight: &Flight) -> FlightTimeline {
        let route = network.route(flight.route);
        let w = network.service_time();
        let mut stops = Vec::with_capacity(route.len());
        let mut min_sum = Time::ZERO;
        let mut max_sum = Time::ZERO;
        for (i, &e) in route.links.iter().enumerate() {
            let link = network.link(e);
            min_sum += link.min_travel;
            max_sum += link.max_travel;
            let dwell = Time::from_ticks(w.ticks() * i as i64);
            let earliest = flight.departure + min_sum + dwell;
            let latest = flight.departure + max_sum + dwell;
            stops.push(Stop {
                node: link.head,
                link: e,
                earliest_arrival: earliest,
                latest_arrival: latest,
                release: latest + w,
            });
        }
        FlightTimeline {
            departure: flight.departure,
            w,
            stops,
        }
    }

    /// Stop at 1-based route position `pos`.
    #[inline]
    pub fn stop(&self, pos: usize) -> &Stop {
        &self.stops[pos - 1]
    }

    /// Earliest time the flight can leave the tail of the link at `pos`.
    #[inline]
    pub fn window_start(&self, pos: usize) -> Time {
        if pos == 1 {
            self.departure
        } else {
            self.stops[pos - 2].earliest_arrival + self.w
        }
    }

    /// Worst-case rerouting window `[L, U]` of the link at `pos` when `closed`
    /// is out of service.
    #[inline]
    pub fn worst_window(&self, pos: usize, closed: NodeId) -> Window {
        let stop = self.stop(pos);
        let hi = if stop.node == closed {
            stop.latest_arrival
        } else {
            stop.release
        };
        Window::new(self.window_start(pos), hi)
    }

    /// Best-case window `[L, Û]`: into the closed node it ends at the earliest
    /// arrival, since only flights still certain to be inbound matter.
    #[inline]
    pub fn best_window(&self, pos: usize, closed: NodeId) -> Window {
        let stop = self.stop(pos);
        let hi = if stop.node == closed {
            stop.earliest_arrival
        } else {
            stop.release
        };
        Window::new(self.window_start(pos), hi)
    }

    /// `a + w` at the node at `pos`; for the origin (`pos == 0`) this is the
    /// departure time.
    #[inline]
    pub fn release_at(&self, pos: usize) -> Time {
        if pos == 0 {
            self.departure
        } else {
            self.stops[pos - 1].release
        }
    }

    /// `inf M` at the node at `pos`; for the origin, the departure time.
    #[inline]
    pub fn earliest_at(&self, pos: usize) -> Time {
        if pos == 0 {
            self.departure
        } else {
            self.stops[pos - 1].earliest_arrival
        }
    }
}

/// Timelines for every flight of a schedule, indexed by flight.
pub fn compute_timelines(network: &Network, schedule: &Schedule) -> Vec<FlightTimeline> {
    schedule
        .flights()
        .iter()
        .map(|f| FlightTimeline::compute(network, f))
        .collect()
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
    fn example_two_second_flight() {
        let net = fixtures::example2_network(2, 1);
        let sched = ScheduleSpec::new().flight("S2", "R2", t(8)).build(&net).unwrap();
        let tl = FlightTimeline::compute(&net, &sched.flights()[0]);
        let v2 = tl.stop(1);
        assert_eq!((v2.latest_arrival, v2.earliest_arrival, v2.release), (t(18), t(16), t(19)));
        let v4 = tl.stop(2);
        assert_eq!((v4.latest_arrival, v4.earliest_arrival, v4.release), (t(25), t(19), t(26)));
        let closed_v4 = net.node_by_name("v4").unwrap();
        assert_eq!(tl.worst_window(1, closed_v4), Window::new(t(8), t(19)));
        assert_eq!(tl.worst_window(2, closed_v4), Window::new(t(17), t(25)));
        assert_eq!(tl.best_window(2, closed_v4), Window::new(t(17), t(19)));
    }

    #[test]
    fn example_two_first_flight() {
        let net = fixtures::example2_network(2, 1);
        let sched = ScheduleSpec::new().flight("S1", "R2", t(1)).build(&net).unwrap();
        let tl = FlightTimeline::compute(&net, &sched.flights()[0]);
        assert_eq!(tl.stop(2).latest_arrival, t(18));
        assert_eq!(tl.stop(2).occupancy(), (t(12), t(19)));
    }

    #[test]
    fn zero_uncertainty_has_width_w() {
        let net = crate::model::network::NetworkSpec::new(t(1))
            .node("a", crate::model::network::Capacity::Unbounded)
            .node("b", crate::model::network::Capacity::Finite(1))
            .link("e", "a", "b", t(5), t(5), &["a", "b"])
            .route("R", &["e"])
            .build()
            .unwrap();
        let sched = ScheduleSpec::new().flight("f", "R", t(0)).build(&net).unwrap();
        let tl = FlightTimeline::compute(&net, &sched.flights()[0]);
        assert_eq!(tl.stop(1).occupancy(), (t(5), t(6)));
    }

    #[test]
    fn semantics_boundaries() {
        assert!(!Semantics::RightOpen.contains(t(1), t(2), t(2)));
        assert!(Semantics::Closed.contains(t(1), t(2), t(2)));
        assert!(!Semantics::RightOpen.reaches(t(2), t(2)));
        assert!(Semantics::Closed.reaches(t(2), t(2)));
    }
}

//! Per-closed-node data shared by every closure time.

use crate::model::{FlightId, FlightTimeline, LinkId, Network, NodeId, RouteId, Schedule, Semantics};
use crate::time::Time;

/// One occupancy interval `M^j_v` tagged with what decides whether it counts
/// towards the unaffected peak at a given closure time.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Occupant {
    pub lo: Time,
    pub hi: Time,
    pub flight: FlightId,
    pub rule: Inclusion,
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Inclusion {
    /// The route avoids the closed node.
    Always,
    /// The route visits the closed node.
    Through {
        /// `a + w` at the closed node (departure time at the origin).
        release: Time,
        departure: Time,
        /// `inf M` at the closed node.
        earliest: Time,
        /// The interval lies after the closed node on the route.
        downstream: bool,
    },
}

impl Occupant {
    /// Counted at `t`: unaffected flights, plus the later stops of flights
    /// that may already have cleared the closed node.
    #[inline]
    pub fn counts_at(&self, t: Time) -> bool {
        match self.rule {
            Inclusion::Always => true,
            Inclusion::Through {
                release,
                departure,
                earliest,
                downstream,
            } => {
                if release <= t {
                    true
                } else if departure > t {
                    false
                } else {
                    downstream && earliest <= t
                }
            }
        }
    }
}

/// A node's occupancy intervals in two sort orders for linear sweeps.
#[derive(Debug, Clone, Default)]
pub(crate) struct NodeOccupancy {
    pub by_lo: Vec<Occupant>,
    pub by_hi: Vec<Occupant>,
}

/// Everything about a closed node `v_c` that does not depend on the closure
/// time: the affected links `ℰ_{v_c}`, reachable backups `𝓑_{e,v_c}`,
/// inbound reroute links `𝓑_{v,v_c}`, each flight's position of `v_c` and its
/// earlier backup positions `ℰ^j_{v_c}`, and sorted occupancy per node.
pub struct ClosureContext<'a> {
    pub(crate) network: &'a Network,
    pub(crate) timelines: &'a [FlightTimeline],
    pub(crate) closed: NodeId,
    pub(crate) semantics: Semantics,
    pub(crate) routes: Vec<RouteId>,
    /// Route position of `v_c` for each flight; `Some(0)` at the origin.
    pub(crate) position: Vec<Option<usize>>,
    /// Flights whose route visits `v_c`, in schedule order.
    pub(crate) through: Vec<FlightId>,
    pub(crate) affected_links: Vec<LinkId>,
    /// Row index of each affected link, by link.
    pub(crate) row_of: Vec<Option<usize>>,
    pub(crate) reachable_backups: Vec<Vec<NodeId>>,
    pub(crate) reroute_links: Vec<Vec<LinkId>>,
    pub(crate) earlier_positions: Vec<Vec<usize>>,
    pub(crate) occupancy: Vec<NodeOccupancy>,
}

impl<'a> ClosureContext<'a> {
    pub fn new(
        network: &'a Network,
        schedule: &Schedule,
        timelines: &'a [FlightTimeline],
        closed: NodeId,
        semantics: Semantics,
    ) -> Self {
        assert_eq!(schedule.len(), timelines.len(), "one timeline per flight");
        let affected_links: Vec<LinkId> = network.inbound(closed).to_vec();
        let mut row_of = vec![None; network.links().len()];
        for (r, e) in affected_links.iter().enumerate() {
            row_of[e.index()] = Some(r);
        }
        let reachable_backups: Vec<Vec<NodeId>> = network
            .links()
            .iter()
            .map(|l| {
                if l.head == closed {
                    l.backups.iter().copied().filter(|&v| v != closed).collect()
                } else {
                    vec![l.head]
                }
            })
            .collect();
        let mut reroute_links = vec![Vec::new(); network.nodes().len()];
        for e in network.link_ids() {
            for &v in &reachable_backups[e.index()] {
                reroute_links[v.index()].push(e);
            }
        }

        let mut position = Vec::with_capacity(schedule.len());
        let mut through = Vec::new();
        let mut earlier_positions = Vec::with_capacity(schedule.len());
        let mut occupancy = vec![NodeOccupancy::default(); network.nodes().len()];
        for (j, (flight, tl)) in schedule.flights().iter().zip(timelines).enumerate() {
            let id = FlightId(j);
            let route = network.route(flight.route);
            let p = route.position_of(closed);
            position.push(p);
            let mut earlier = Vec::new();
            if let Some(p) = p {
                through.push(id);
                if p >= 1 {
                    let targets = &reachable_backups[route.link_at(p).index()];
                    for l in 1..p {
                        if targets.contains(&tl.stop(l).node) {
                            earlier.push(l);
                        }
                    }
                }
            }
            earlier_positions.push(earlier);
            for (i, stop) in tl.stops.iter().enumerate() {
                let rule = match p {
                    None => Inclusion::Always,
                    Some(p) => Inclusion::Through {
                        release: tl.release_at(p),
                        departure: tl.departure,
                        earliest: tl.earliest_at(p),
                        downstream: i + 1 > p,
                    },
                };
                occupancy[stop.node.index()].by_lo.push(Occupant {
                    lo: stop.earliest_arrival,
                    hi: stop.release,
                    flight: id,
                    rule,
                });
            }
        }
        for occ in &mut occupancy {
            if semantics == Semantics::RightOpen {
                occ.by_lo.retain(|o| o.lo < o.hi);
            }
            occ.by_lo.sort_by_key(|o| (o.lo, o.flight));
            occ.by_hi = occ.by_lo.clone();
            occ.by_hi.sort_by_key(|o| (o.hi, o.flight));
        }

        ClosureContext {
            network,
            timelines,
            closed,
            semantics,
            routes: schedule.flights().iter().map(|f| f.route).collect(),
            position,
            through,
            affected_links,
            row_of,
            reachable_backups,
            reroute_links,
            earlier_positions,
            occupancy,
        }
    }

    pub fn network(&self) -> &Network {
        self.network
    }

    pub fn timelines(&self) -> &[FlightTimeline] {
        self.timelines
    }

    pub fn closed(&self) -> NodeId {
        self.closed
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    /// `ℰ_{v_c}`: links whose head is the closed node.
    pub fn affected_links(&self) -> &[LinkId] {
        &self.affected_links
    }

    /// `𝓑_{e,v_c}`.
    pub fn reachable_backups(&self, link: LinkId) -> &[NodeId] {
        &self.reachable_backups[link.index()]
    }

    /// `𝓑_{v,v_c}`: links whose flights may end up at `node`.
    pub fn reroute_links(&self, node: NodeId) -> &[LinkId] {
        &self.reroute_links[node.index()]
    }

    /// `ℰ^j_{v_c}` as route positions: earlier links of `flight` whose head is
    /// a reachable backup of the link into the closed node.
    pub fn earlier_backup_positions(&self, flight: FlightId) -> &[usize] {
        &self.earlier_positions[flight.index()]
    }

    /// Position of the closed node on the flight's route, 0 at the origin.
    pub fn closed_position(&self, flight: FlightId) -> Option<usize> {
        self.position[flight.index()]
    }

    /// `𝒥_{v_c}`.
    pub fn flights_through(&self) -> &[FlightId] {
        &self.through
    }

    /// Whether the closed node is a source. Flights there are canceled or
    /// already gone, so every scenario is safe.
    pub fn closed_is_source(&self) -> bool {
        self.network.is_source(self.closed)
    }
}

//! Network, schedule and per-flight timeline model.

pub mod feasibility;
pub mod network;
pub mod schedule;
pub mod timeline;

pub use feasibility::{check_feasible, peak_overlap, CapacityViolation, FeasibilityReport};
pub use network::{Capacity, Link, LinkId, Network, NetworkSpec, Node, NodeId, Route, RouteId};
pub use schedule::{Flight, FlightId, Schedule, ScheduleSpec};
pub use timeline::{compute_timelines, FlightTimeline, Semantics, Stop};

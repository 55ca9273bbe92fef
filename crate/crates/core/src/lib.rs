//! Closure-safety verification for flight schedules over capacitated
//! vertiport networks.
//!
//! Given a network whose links have uncertain travel times and a nominally
//! feasible schedule, the crate decides whether every in-flight vehicle can
//! still land without exceeding any node's capacity when a single node is
//! closed. Worst-case safety must hold for every realization of travel
//! times; best-case safety for at least one. Each closure scenario reduces to
//! a small transportation feasibility problem, solved exactly by max-flow,
//! which yields an integral rerouting plan or a Hall-type certificate.
//!
//! Module map:
//!
//! - [`model`]: network, schedule, timelines, nominal feasibility
//! - [`closure`]: scenario sets, unaffected peak occupancy, critical times,
//!   worst/best-case constraint systems
//! - [`solver`]: transportation instances, max-flow decision, certificates
//! - [`oracle`]: brute-force enumeration, exact LP, realization simulator
//! - [`verify`]: scenario sweeps and aggregated reports
//! - [`io`]: input files, report and series writers, generation, benchmarks

pub mod closure;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod model;
pub mod oracle;
pub mod solver;
pub mod time;
pub mod verify;

pub use error::{Error, Result};
pub use model::{Capacity, Network, NetworkSpec, Schedule, ScheduleSpec, Semantics};
pub use time::Time;

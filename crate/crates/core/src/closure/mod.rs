//! Closure scenarios and their constraint systems.
//!
//! A [`ClosureContext`] fixes the closed node; each closure time then yields a
//! [`ClosureScenario`] and the worst- and best-case transportation systems
//! whose feasibility decides safety at that instant.

mod context;
pub mod critical;
pub mod occupancy;
pub mod scenario;
pub mod systems;

pub use context::ClosureContext;
pub use critical::critical_times;
pub use occupancy::{unaffected_occupants, unaffected_peak};
pub use scenario::{derive_scenario, ClosureScenario};
pub use systems::{
    build_best_case_system, build_best_case_with, build_worst_case_system, build_worst_case_with, unaffected_peaks,
    BestCaseSystem, CoveredFlight, FixedInbound, FlightRow, LinkRow, NodeColumn, WorstCaseSystem,
};

//! Independent checks: brute-force enumeration, exact LP relaxation and a
//! realization simulator for the closure rules.

pub mod enumerate;
pub mod lp;
pub mod simulate;

pub use enumerate::{enumerate_assignments, DEFAULT_LIMIT};
pub use lp::relaxation_feasible;
pub use simulate::{
    choices_from_witness, reroute_options, sample_realization, simulate_closure, FlightStatus, Realization,
    SimulationTrace, Violation,
};

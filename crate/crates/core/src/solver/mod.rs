//! Integral transportation feasibility.
//!
//! The constraint matrices produced by closure analysis are totally
//! unimodular, so real and integral feasibility coincide and a max-flow
//! saturation test decides both.

pub mod flow;
pub mod transport;

pub use flow::solve;
pub use transport::{validate_witness, Cell, Certificate, FixedCell, Limit, SolveOutcome, TransportInstance, Witness};

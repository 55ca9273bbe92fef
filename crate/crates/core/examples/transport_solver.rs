//! The transportation solver on its own: a feasible instance with its
//! witness, and an infeasible one with its Hall certificate.
//!
//! `cargo run --example transport_solver`

use vertiport_safety::oracle::{enumerate_assignments, DEFAULT_LIMIT};
use vertiport_safety::solver::{solve, validate_witness, Limit, TransportInstance};

fn main() {
    // Two rows of supply 2 and 1; three columns of capacity 1.
    let mut inst = TransportInstance::new(vec![2, 1], vec![Limit::Finite(1); 3]);
    inst.allow(0, 0, Limit::Unbounded)
        .allow(0, 1, Limit::Unbounded)
        .allow(1, 1, Limit::Unbounded)
        .allow(1, 2, Limit::Unbounded);
    let outcome = solve(&inst).unwrap();
    let witness = outcome.witness().unwrap();
    println!("feasible: {:?}", witness.values);
    assert!(validate_witness(&inst, witness));

    // Column 1 already holds one unit; rows 0 and 1 now compete for column 0.
    inst.fix(None, 1, 1);
    let outcome = solve(&inst).unwrap();
    let cert = outcome.certificate().unwrap();
    println!("infeasible: {cert:?}");
    assert!(cert.verify(&inst));
    assert_eq!(enumerate_assignments(&inst, DEFAULT_LIMIT).unwrap(), None);
}

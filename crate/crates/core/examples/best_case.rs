//! Best-case system at one closure: which flights must be rerouted and where
//! the solver sends them.
//!
//! `cargo run --example best_case`

use vertiport_safety::closure::{build_best_case_system, derive_scenario};
use vertiport_safety::solver::solve;
use vertiport_safety::verify::Verifier;
use vertiport_safety::{fixtures, Time};

fn main() {
    let network = fixtures::example2_network(2, 1);
    let schedule = fixtures::example2_schedule(&network, Time::from_units(10));
    let verifier = Verifier::new(&network, &schedule);
    let v4 = network.node_by_name("v4").unwrap();
    let ctx = verifier.context(v4);

    let scenario = derive_scenario(&ctx, Time::from_units(15));
    let system = build_best_case_system(&ctx, &scenario);
    for row in &system.rows {
        let targets: Vec<&str> = row.targets.iter().map(|&v| network.node(v).name.as_str()).collect();
        println!("{} may land at {targets:?}", schedule.flight(row.flight).name);
    }
    let outcome = solve(&system.to_instance()).expect("instance is well formed");
    match outcome.witness() {
        Some(w) => {
            for (&(r, c), &n) in &w.values {
                if n > 0 {
                    println!(
                        "{} -> {}",
                        schedule.flight(system.rows[r].flight).name,
                        network.node(system.columns[c].node).name
                    );
                }
            }
        }
        None => println!("no rerouting exists: {:?}", outcome.certificate()),
    }
}

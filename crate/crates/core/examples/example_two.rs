//! Four-node network: closing `v4` at t = 15 for several departures of S3.
//!
//! `cargo run --example example_two`

use vertiport_safety::{fixtures, Time};
use vertiport_safety::verify::Verifier;

fn main() {
    let network = fixtures::example2_network(2, 1);
    let v4 = network.node_by_name("v4").unwrap();
    println!("delta3\tworst\tbest");
    for d in 0..=12 {
        let schedule = fixtures::example2_schedule(&network, Time::from_units(d));
        let record = Verifier::new(&network, &schedule).evaluate_at(v4, Time::from_units(15));
        println!(
            "{d}\t{}\t{}",
            verdict(record.worst_safe()),
            verdict(record.best_safe())
        );
    }
}

fn verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "safe",
        Some(false) => "unsafe",
        None => "-",
    }
}

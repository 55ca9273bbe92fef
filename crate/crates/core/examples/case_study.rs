//! Load the seven-node network and a 20-flight schedule from TOML, verify
//! every closure and print the per-node verdicts.
//!
//! `cargo run --release --example case_study [network.toml schedule.toml]`

use std::path::PathBuf;

use vertiport_safety::io::{read_network, read_schedule};
use vertiport_safety::verify::{Scope, Verifier};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut args = std::env::args_os().skip(1).map(PathBuf::from);
    let network_path = args.next().unwrap_or_else(|| fixtures.join("example1.toml"));
    let schedule_path = args.next().unwrap_or_else(|| fixtures.join("case_study_20.toml"));

    let network = read_network(&network_path)?;
    let schedule = read_schedule(&schedule_path, &network)?;
    let report = Verifier::new(&network, &schedule).jobs(0).verify(Scope::All);

    println!("node\tscenarios\tworst\tbest");
    for n in &report.nodes {
        println!(
            "{}\t{}\t{:?}\t{:?}",
            network.node(n.node).name,
            n.scenarios,
            n.worst.unwrap_or(true),
            n.best.unwrap_or(true)
        );
    }
    println!("1-closure safe: worst {:?}, best {:?}", report.worst, report.best);
    Ok(())
}

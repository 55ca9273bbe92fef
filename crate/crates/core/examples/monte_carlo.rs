//! Replay every worst-case safe closure of `v5` against sampled travel
//! times, rerouting along the solver's witness.
//!
//! `cargo run --release --example monte_carlo [samples]`

use std::path::PathBuf;

use vertiport_safety::io::{read_network, read_schedule};
use vertiport_safety::verify::Verifier;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples = std::env::args().nth(1).map_or(Ok(200), |s| s.parse())?;
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let network = read_network(&dir.join("example1_v4_8.toml"))?;
    let schedule = read_schedule(&dir.join("case_study_20.toml"), &network)?;
    let v5 = network.node_by_name("v5").unwrap();

    let report = Verifier::new(&network, &schedule).jobs(0).monte_carlo(v5, samples, 7);
    println!(
        "{} of {} closure times safe, {} simulations, {} violations",
        report.safe_scenarios,
        report.scenarios,
        report.simulations,
        report.failures.len()
    );
    Ok(())
}

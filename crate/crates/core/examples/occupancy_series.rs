//! Worst-case occupancy of `v4` and redistribution of link `e6` while `v5`
//! is closed, as tab-separated series.
//!
//! `cargo run --release --example occupancy_series`

use std::path::PathBuf;

use vertiport_safety::io::{occupancy_series, read_network, read_schedule, series, SeriesTarget};
use vertiport_safety::verify::Verifier;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let network = read_network(&dir.join("example1.toml"))?;
    let schedule = read_schedule(&dir.join("case_study_20.toml"), &network)?;
    let verifier = Verifier::new(&network, &schedule);
    let v4 = network.node_by_name("v4").unwrap();
    let v5 = network.node_by_name("v5").unwrap();
    let e6 = network.link_by_name("e6").unwrap();

    let node = occupancy_series(&verifier, v5, SeriesTarget::Node(v4));
    print!("{}", series::unsafe_stretches(&node));
    for row in node.rows.iter().filter(|r| r.last().map(String::as_str) == Some(series::INFEASIBLE)).take(3) {
        println!("{}", row.join("\t"));
    }
    let link = occupancy_series(&verifier, v5, SeriesTarget::Link(e6));
    println!("{}", link.header.join("\t"));
    println!("{} rows", link.rows.len());
    Ok(())
}

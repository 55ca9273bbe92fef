//! Runtime of full worst-case verification against schedule size.
//!
//! `cargo run --release --example scaling [max] [step]`

use vertiport_safety::fixtures;
use vertiport_safety::io::run_benchmark;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let max: usize = args.next().map_or(Ok(500), |s| s.parse())?;
    let step: usize = args.next().map_or(Ok(100), |s| s.parse())?;
    let network = fixtures::example1_network().with_raised_capacities(10);
    let sizes: Vec<usize> = (step..=max).step_by(step).collect();
    print!("{}", run_benchmark(&network, &sizes, 0, 1, 3)?);
    Ok(())
}

//! Random nominally feasible schedule on the seven-node network with every
//! capacity raised by 10, written as TOML to stdout.
//!
//! `cargo run --example generate_schedule [count] [seed]`

use vertiport_safety::io::{generate_schedule, schedule_to_toml, GenerateOptions};
use vertiport_safety::model::check_feasible;
use vertiport_safety::{fixtures, Semantics};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let count = args.next().map_or(Ok(100), |s| s.parse())?;
    let seed = args.next().map_or(Ok(0), |s| s.parse())?;
    let network = fixtures::example1_network().with_raised_capacities(10);
    let schedule = generate_schedule(&network, &GenerateOptions::new(count, seed))?;
    assert!(check_feasible(&network, &schedule, Semantics::RightOpen).feasible);
    print!("{}", schedule_to_toml(&schedule, &network));
    Ok(())
}

//! Networks and schedules from the worked examples, for tests and examples.

use crate::model::{Capacity, Network, NetworkSpec, Schedule, ScheduleSpec};
use crate::time::Time;

fn t(units: i64) -> Time {
    Time::from_units(units)
}

/// Seven-node network with three routes and the backup table used throughout.
pub fn example1_spec() -> NetworkSpec {
    NetworkSpec::new(t(1))
        .node("v1", Capacity::Unbounded)
        .node("v2", Capacity::Finite(8))
        .node("v3", Capacity::Finite(6))
        .node("v4", Capacity::Finite(4))
        .node("v5", Capacity::Finite(5))
        .node("v6", Capacity::Finite(3))
        .node("v7", Capacity::Finite(5))
        .link("e1", "v1", "v2", t(8), t(10), &["v1", "v2"])
        .link("e2", "v2", "v3", t(3), t(5), &["v2", "v3", "v4"])
        .link("e3", "v2", "v4", t(2), t(6), &["v2", "v3", "v4"])
        .link("e4", "v3", "v6", t(4), t(8), &["v3", "v5", "v6"])
        .link("e5", "v3", "v5", t(5), t(6), &["v3", "v4", "v5"])
        .link("e6", "v4", "v5", t(1), t(5), &["v3", "v4", "v5", "v7"])
        .link("e7", "v5", "v7", t(3), t(6), &["v4", "v5", "v7"])
        .route("R1", &["e1", "e2", "e4"])
        .route("R2", &["e1", "e2", "e5", "e7"])
        .route("R3", &["e1", "e3", "e6", "e7"])
}

pub fn example1_network() -> Network {
    example1_spec().build().expect("example network is valid")
}

/// Four-node sub-network (`v1..v4`, links `e1..e3`) with capacities
/// `C_v2 = cap_v2`, `C_v3 = cap_v3`, `C_v4 = 1`.
pub fn example2_network(cap_v2: u32, cap_v3: u32) -> Network {
    NetworkSpec::new(t(1))
        .node("v1", Capacity::Unbounded)
        .node("v2", Capacity::Finite(cap_v2))
        .node("v3", Capacity::Finite(cap_v3))
        .node("v4", Capacity::Finite(1))
        .link("e1", "v1", "v2", t(8), t(10), &["v1", "v2"])
        .link("e2", "v2", "v3", t(3), t(5), &["v2", "v3", "v4"])
        .link("e3", "v2", "v4", t(2), t(6), &["v2", "v3", "v4"])
        .route("R1", &["e1", "e2"])
        .route("R2", &["e1", "e3"])
        .build()
        .expect("example network is valid")
}

/// `{S1 = (R2, 1), S2 = (R2, 8), S3 = (R1, delta3)}`.
pub fn example2_schedule(network: &Network, delta3: Time) -> Schedule {
    ScheduleSpec::new()
        .flight("S1", "R2", t(1))
        .flight("S2", "R2", t(8))
        .flight("S3", "R1", delta3)
        .build(network)
        .expect("example schedule is valid")
}

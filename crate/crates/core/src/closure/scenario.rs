use serde::Serialize;

use crate::closure::context::ClosureContext;
use crate::model::{FlightId, NodeId};
use crate::time::Time;

/// The flight sets of one closure `(v_c, t_c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureScenario {
    pub closed: NodeId,
    pub time: Time,
    /// `𝒥*`: routes through `v_c` with `a + w > t_c` there.
    pub possibly_affected: Vec<FlightId>,
    /// `𝒥_c`: routes through `v_c` not yet departed.
    pub canceled: Vec<FlightId>,
    /// `𝒥^{*\c}`.
    pub rerouting: Vec<FlightId>,
    /// `𝒥^m`: members of `𝒥^{*\c}` with `inf M ≥ t_c` at `v_c`.
    pub definitely_affected: Vec<FlightId>,
}

pub fn derive_scenario(ctx: &ClosureContext<'_>, time: Time) -> ClosureScenario {
    let mut scenario = ClosureScenario {
        closed: ctx.closed,
        time,
        possibly_affected: Vec::new(),
        canceled: Vec::new(),
        rerouting: Vec::new(),
        definitely_affected: Vec::new(),
    };
    for &j in &ctx.through {
        let p = ctx.position[j.index()].expect("flight visits the closed node");
        let tl = &ctx.timelines[j.index()];
        let canceled = tl.departure > time;
        if canceled {
            scenario.canceled.push(j);
        }
        if tl.release_at(p) <= time {
            continue;
        }
        scenario.possibly_affected.push(j);
        if canceled {
            continue;
        }
        scenario.rerouting.push(j);
        if tl.earliest_at(p) >= time {
            scenario.definitely_affected.push(j);
        }
    }
    scenario
}

//! Peak occupancy from flights that keep their nominal plan.

use crate::closure::context::{ClosureContext, Occupant};
use crate::model::{FlightId, NodeId, Semantics};
use crate::time::Time;

/// `N_R(v, t_c, v_c)`: the largest number of nominal occupancy intervals at
/// `node` that overlap at any instant `t ≥ time`.
///
/// Counted intervals belong to flights outside `𝒥*`, and to the stops after
/// the closed node of flights in `𝒥^{*\c}` that may have cleared it by
/// `time` (`inf M ≤ t_c` there); such flights continue as planned.
///
/// Linear in the number of intervals at `node`.
pub fn unaffected_peak(ctx: &ClosureContext<'_>, node: NodeId, time: Time) -> u32 {
    let occ = &ctx.occupancy[node.index()];
    let semantics = ctx.semantics;
    let live = |o: &Occupant| semantics.reaches(o.hi, time) && o.counts_at(time);
    let ends_first = semantics == Semantics::RightOpen;

    let starts = &occ.by_lo;
    let ends = &occ.by_hi;
    let (mut i, mut k) = (0, 0);
    let mut current: u32 = 0;
    let mut peak: u32 = 0;
    loop {
        while i < starts.len() && !live(&starts[i]) {
            i += 1;
        }
        if i == starts.len() {
            break;
        }
        while k < ends.len() && !live(&ends[k]) {
            k += 1;
        }
        let start = starts[i].lo.max(time);
        let take_end = k < ends.len() && {
            let end = ends[k].hi;
            end < start || (end == start && ends_first)
        };
        if take_end {
            current -= 1;
            k += 1;
        } else {
            current += 1;
            peak = peak.max(current);
            i += 1;
        }
    }
    peak
}

/// Flights whose interval at `node` enters [`unaffected_peak`], with the
/// interval, in schedule order.
pub fn unaffected_occupants(ctx: &ClosureContext<'_>, node: NodeId, time: Time) -> Vec<(FlightId, Time, Time)> {
    let mut out: Vec<_> = ctx.occupancy[node.index()]
        .by_lo
        .iter()
        .filter(|o| ctx.semantics.reaches(o.hi, time) && o.counts_at(time))
        .map(|o| (o.flight, o.lo, o.hi))
        .collect();
    out.sort_by_key(|x| x.0);
    out
}

//! Closure times at which a scenario can change.

use crate::closure::context::ClosureContext;
use crate::time::Time;

/// Sorted closure times that cover every distinct scenario for the closed
/// node: all occupancy endpoints, departures and window endpoints, the
/// midpoint between each consecutive pair, and one point past the last.
///
/// Zero is added when the first event is later, so that the stretch before
/// any event is sampled. Empty for an empty schedule.
pub fn critical_times(ctx: &ClosureContext<'_>) -> Vec<Time> {
    let mut events = Vec::new();
    for tl in ctx.timelines {
        events.push(tl.departure);
        for (i, stop) in tl.stops.iter().enumerate() {
            let pos = i + 1;
            events.push(stop.earliest_arrival);
            events.push(stop.release);
            events.push(tl.window_start(pos));
            events.push(tl.worst_window(pos, ctx.closed).hi);
            events.push(tl.best_window(pos, ctx.closed).hi);
        }
    }
    events.retain(|&t| t >= Time::ZERO);
    events.sort_unstable();
    events.dedup();
    if events.first().is_some_and(|&t| t > Time::ZERO) {
        events.insert(0, Time::ZERO);
    }
    let Some(&last) = events.last() else {
        return events;
    };
    let mut out = Vec::with_capacity(events.len() * 2);
    for pair in events.windows(2) {
        out.push(pair[0]);
        out.push(pair[0].midpoint(pair[1]));
    }
    out.push(last);
    out.push(last + Time::from_units(1));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{compute_timelines, Capacity, NetworkSpec, ScheduleSpec, Semantics};

    fn t(u: i64) -> Time {
        Time::from_units(u)
    }

    #[test]
    fn single_link_events_and_midpoints() {
        let net = NetworkSpec::new(t(1))
            .node("a", Capacity::Unbounded)
            .node("b", Capacity::Finite(1))
            .link("e", "a", "b", t(5), t(5), &["a", "b"])
            .route("R", &["e"])
            .build()
            .unwrap();
        let sched = ScheduleSpec::new().flight("f", "R", t(0)).build(&net).unwrap();
        let tls = compute_timelines(&net, &sched);
        let ctx = ClosureContext::new(&net, &sched, &tls, net.node_by_name("b").unwrap(), Semantics::RightOpen);
        let times = critical_times(&ctx);
        assert_eq!(
            times,
            vec![t(0), Time::from_millis(2500), t(5), Time::from_millis(5500), t(6), t(7)]
        );
    }

    #[test]
    fn example_two_contains_listed_events() {
        let net = fixtures::example2_network(2, 1);
        let sched = fixtures::example2_schedule(&net, t(10));
        let tls = compute_timelines(&net, &sched);
        let ctx = ClosureContext::new(&net, &sched, &tls, net.node_by_name("v4").unwrap(), Semantics::RightOpen);
        let times = critical_times(&ctx);
        for e in [1, 8, 9, 10, 12, 17, 18, 19, 25, 26] {
            assert!(times.contains(&t(e)), "missing {e}");
        }
        assert!(times.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_schedule_has_no_times() {
        let net = fixtures::example2_network(2, 1);
        let sched = crate::Schedule::default();
        let tls = compute_timelines(&net, &sched);
        let ctx = ClosureContext::new(&net, &sched, &tls, net.node_by_name("v4").unwrap(), Semantics::RightOpen);
        assert!(critical_times(&ctx).is_empty());
    }
}

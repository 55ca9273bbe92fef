//! Model and verifier invariants over random small schedules.

use proptest::prelude::*;

use vertiport_safety::closure::{build_worst_case_system, critical_times, derive_scenario};
use vertiport_safety::io::{network_to_toml, parse_network, parse_schedule, schedule_to_toml};
use vertiport_safety::model::{check_feasible, compute_timelines, NodeId, Semantics};
use vertiport_safety::solver::solve;
use vertiport_safety::verify::{Mode, ScenarioRecord, Verifier};
use vertiport_safety::{fixtures, Capacity, Network, Schedule, ScheduleSpec, Time};

fn units(u: i64) -> Time {
    Time::from_units(u)
}

/// Seven-node network with finite capacities from `caps`, or the four-node
/// one when `caps` is empty.
fn network(caps: &[u32]) -> Network {
    if caps.is_empty() {
        return fixtures::example2_network(2, 1);
    }
    let mut net = fixtures::example1_network();
    for (i, &c) in caps.iter().enumerate() {
        net = net.with_capacity(NodeId(i + 1), Capacity::Finite(c));
    }
    net
}

/// A nominally feasible schedule with integer departures, or `None`.
fn schedule(net: &Network, flights: &[(usize, i64)]) -> Option<Schedule> {
    let mut spec = ScheduleSpec::new();
    for (i, &(r, d)) in flights.iter().enumerate() {
        let route = &net.routes()[r % net.routes().len()].name;
        spec = spec.flight(&format!("F{i}"), route, units(d));
    }
    let sched = spec.build(net).ok()?;
    check_feasible(net, &sched, Semantics::RightOpen).feasible.then_some(sched)
}

fn case() -> impl Strategy<Value = (Network, Schedule)> {
    (
        prop_oneof![Just(Vec::new()), prop::collection::vec(1u32..=4, 6)],
        prop::collection::vec((0usize..3, 0i64..30), 1..=7),
    )
        .prop_filter_map("nominally infeasible", |(caps, flights)| {
            let net = network(&caps);
            let sched = schedule(&net, &flights)?;
            Some((net, sched))
        })
}

/// `(worst, best)` at every critical time of every node.
fn verdicts(verifier: &Verifier<'_>) -> Vec<(NodeId, Time, Option<bool>, Option<bool>)> {
    let net = verifier.network();
    let mut out = Vec::new();
    for v in net.node_ids() {
        for t in verifier.critical_times(v) {
            let r = verifier.evaluate_at(v, t);
            out.push((v, t, r.worst_safe(), r.best_safe()));
        }
    }
    out
}

fn pair(r: &ScenarioRecord) -> (Option<bool>, Option<bool>) {
    (r.worst_safe(), r.best_safe())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn timelines_translate_with_departures((net, sched) in case(), shift in 0i64..50) {
        let delta = units(shift);
        let a = compute_timelines(&net, &sched);
        let b = compute_timelines(&net, &sched.shifted(delta));
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(x.departure + delta, y.departure);
            for (p, (s, u)) in x.stops.iter().zip(&y.stops).enumerate() {
                prop_assert_eq!(s.earliest_arrival + delta, u.earliest_arrival);
                prop_assert_eq!(s.latest_arrival + delta, u.latest_arrival);
                prop_assert_eq!(s.release + delta, u.release);
                for v in net.node_ids() {
                    let (wx, wy) = (x.worst_window(p + 1, v), y.worst_window(p + 1, v));
                    prop_assert_eq!((wx.lo + delta, wx.hi + delta), (wy.lo, wy.hi));
                    let (bx, by) = (x.best_window(p + 1, v), y.best_window(p + 1, v));
                    prop_assert_eq!((bx.lo + delta, bx.hi + delta), (by.lo, by.hi));
                }
            }
        }
    }

    #[test]
    fn verdicts_translate_with_departures((net, sched) in case(), shift in 0i64..50) {
        let delta = units(shift);
        let shifted = sched.shifted(delta);
        let a = Verifier::new(&net, &sched);
        let b = Verifier::new(&net, &shifted);
        for v in net.node_ids() {
            for t in a.critical_times(v) {
                prop_assert_eq!(pair(&a.evaluate_at(v, t)), pair(&b.evaluate_at(v, t + delta)), "{:?} at {}", v, t);
            }
        }
    }

    #[test]
    fn occupancy_intervals_bracket_latest_arrival((net, sched) in case()) {
        let w = net.service_time();
        for (tl, f) in compute_timelines(&net, &sched).iter().zip(sched.flights()) {
            let mut spread = Time::ZERO;
            for (s, &e) in tl.stops.iter().zip(&net.route(f.route).links) {
                let link = net.link(e);
                spread += link.max_travel - link.min_travel;
                prop_assert!(s.earliest_arrival <= s.latest_arrival);
                prop_assert!(s.latest_arrival < s.release);
                prop_assert_eq!(s.release - s.earliest_arrival, spread + w);
            }
        }
    }

    #[test]
    fn relabeling_preserves_verdicts((net, sched) in case()) {
        let mut spec = net.to_spec();
        spec.nodes.reverse();
        spec.links.reverse();
        spec.routes.reverse();
        let relabeled = spec.build().unwrap();
        let resched = sched.to_spec(&net).build(&relabeled).unwrap();
        prop_assert_eq!(
            check_feasible(&net, &sched, Semantics::RightOpen).feasible,
            check_feasible(&relabeled, &resched, Semantics::RightOpen).feasible
        );
        let a = Verifier::new(&net, &sched);
        let b = Verifier::new(&relabeled, &resched);
        for v in net.node_ids() {
            let u = relabeled.node_by_name(&net.node(v).name).unwrap();
            let ta = a.critical_times(v);
            prop_assert_eq!(&ta, &b.critical_times(u));
            for t in ta {
                prop_assert_eq!(pair(&a.evaluate_at(v, t)), pair(&b.evaluate_at(u, t)));
            }
        }
    }

    #[test]
    fn feasibility_sweep_matches_endpoint_grid(
        caps in prop::collection::vec(1u32..=3, 6),
        flights in prop::collection::vec((0usize..3, 0i64..20), 1..=8),
    ) {
        let net = network(&caps);
        let mut spec = ScheduleSpec::new();
        for (i, &(r, d)) in flights.iter().enumerate() {
            spec = spec.flight(&format!("F{i}"), &net.routes()[r].name, units(d));
        }
        let sched = spec.build(&net).unwrap();
        for semantics in [Semantics::RightOpen, Semantics::Closed] {
            let tls = compute_timelines(&net, &sched);
            let mut grid_ok = true;
            for v in net.node_ids() {
                let Some(cap) = net.capacity(v).finite() else { continue };
                let intervals: Vec<(Time, Time)> = tls
                    .iter()
                    .flat_map(|tl| tl.stops.iter().filter(|s| s.node == v).map(|s| s.occupancy()))
                    .collect();
                for &(lo, hi) in &intervals {
                    for t in [lo, hi] {
                        let n = intervals.iter().filter(|&&(a, b)| semantics.contains(a, b, t)).count();
                        grid_ok &= n as u32 <= cap;
                    }
                }
            }
            prop_assert_eq!(check_feasible(&net, &sched, semantics).feasible, grid_ok);
        }
    }

    #[test]
    fn verdicts_are_constant_between_critical_times((net, sched) in case(), picks in prop::collection::vec(0.0f64..1.0, 8)) {
        let verifier = Verifier::new(&net, &sched);
        for v in net.node_ids() {
            let times = verifier.critical_times(v);
            for (i, w) in times.windows(2).enumerate() {
                let (a, b) = (w[0], w[1]);
                let frac = picks[i % picks.len()];
                let ticks = a.ticks() + 1 + ((b.ticks() - a.ticks() - 1) as f64 * frac) as i64;
                let t = Time::from_ticks(ticks.min(b.ticks() - 1));
                if t <= a {
                    continue;
                }
                let got = pair(&verifier.evaluate_at(v, t));
                let (pa, pb) = (pair(&verifier.evaluate_at(v, a)), pair(&verifier.evaluate_at(v, b)));
                prop_assert!(got == pa || got == pb, "{:?} at {} between {} and {}", v, t, a, b);
            }
            if let Some(&last) = times.last() {
                let later = pair(&verifier.evaluate_at(v, last + units(7)));
                prop_assert_eq!(later, pair(&verifier.evaluate_at(v, last)));
            }
        }
    }

    #[test]
    fn worst_case_safety_implies_best_case_safety((net, sched) in case()) {
        for (v, t, worst, best) in verdicts(&Verifier::new(&net, &sched)) {
            prop_assert!(worst != Some(true) || best == Some(true), "{:?} at {}", v, t);
        }
    }

    #[test]
    fn raising_a_capacity_never_hurts((net, sched) in case(), node in 1usize..7, extra in 1u32..3) {
        let v = NodeId(node % net.nodes().len());
        let raised = net.with_capacity(v, net.capacity(v).raised_by(extra));
        let before = Verifier::new(&net, &sched);
        let after = Verifier::new(&raised, &sched);
        for c in net.node_ids() {
            for t in before.critical_times(c) {
                let (w0, b0) = pair(&before.evaluate_at(c, t));
                let (w1, b1) = pair(&after.evaluate_at(c, t));
                prop_assert!(w0 != Some(true) || w1 == Some(true));
                prop_assert!(b0 != Some(true) || b1 == Some(true));
            }
        }
    }

    #[test]
    fn source_closures_are_feasible((net, sched) in case()) {
        let verifier = Verifier::new(&net, &sched).mode(Mode::Both);
        for v in net.node_ids().filter(|&v| net.is_source(v)) {
            for t in verifier.critical_times(v) {
                let r = verifier.evaluate_at(v, t);
                prop_assert_eq!(pair(&r), (Some(true), Some(true)));
            }
        }
    }

    #[test]
    fn every_rerouting_flight_is_accounted_for((net, sched) in case()) {
        let verifier = Verifier::new(&net, &sched);
        let tls = verifier.timelines();
        for v in net.node_ids() {
            let ctx = verifier.context(v);
            for t in critical_times(&ctx) {
                let scenario = derive_scenario(&ctx, t);
                let system = build_worst_case_system(&ctx, &scenario);
                for &j in &scenario.rerouting {
                    let p = net.route(sched.flight(j).route).position_of(v).unwrap();
                    if !tls[j.index()].worst_window(p, v).contains(t) {
                        continue;
                    }
                    let in_row = system.rows.iter().filter(|r| r.flights.contains(&j)).count();
                    let covered = system.covered.iter().filter(|c| c.flight == j).count();
                    prop_assert_eq!(in_row + covered, 1, "{:?} closing {:?} at {}", j, v, t);
                }
                prop_assert_eq!(solve(&system.to_instance()).unwrap().is_feasible(), verifier.evaluate_at(v, t).worst_safe().unwrap());
            }
        }
    }

    #[test]
    fn files_round_trip((net, sched) in case()) {
        let net_text = network_to_toml(&net);
        let parsed = parse_network(&net_text, "network.toml").unwrap();
        prop_assert_eq!(&parsed, &net);
        prop_assert_eq!(network_to_toml(&parsed), net_text);
        let sched_text = schedule_to_toml(&sched, &net);
        let reparsed = parse_schedule(&sched_text, "schedule.toml", &parsed).unwrap();
        prop_assert_eq!(&reparsed, &sched);
        prop_assert_eq!(schedule_to_toml(&reparsed, &parsed), sched_text);
    }
}

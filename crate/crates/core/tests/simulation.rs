//! Verifier verdicts replayed through the realization simulator.

use std::collections::BTreeMap;

use proptest::prelude::*;

use vertiport_safety::model::{check_feasible, FlightId, NodeId, Semantics};
use vertiport_safety::oracle::{choices_from_witness, reroute_options, sample_realization, simulate_closure};
use vertiport_safety::verify::{Mode, Verifier};
use vertiport_safety::{fixtures, Capacity, Network, Schedule, ScheduleSpec, Time};

fn units(u: i64) -> Time {
    Time::from_units(u)
}

fn case() -> impl Strategy<Value = (Network, Schedule)> {
    (
        prop::collection::vec(1u32..=3, 6),
        prop::collection::vec((0usize..3, 0i64..25), 1..=6),
    )
        .prop_filter_map("nominally infeasible", |(caps, flights)| {
            let mut net = fixtures::example1_network();
            for (i, &c) in caps.iter().enumerate() {
                net = net.with_capacity(NodeId(i + 1), Capacity::Finite(c));
            }
            let mut spec = ScheduleSpec::new();
            for (i, &(r, d)) in flights.iter().enumerate() {
                spec = spec.flight(&format!("F{i}"), &net.routes()[r].name, units(d));
            }
            let sched = spec.build(&net).ok()?;
            check_feasible(&net, &sched, Semantics::RightOpen).feasible.then_some((net, sched))
        })
}

/// Every assignment of one option per flight.
fn all_choices(options: &[(FlightId, Vec<NodeId>)]) -> Vec<BTreeMap<FlightId, NodeId>> {
    let mut out = vec![BTreeMap::new()];
    for (j, nodes) in options {
        out = out
            .into_iter()
            .flat_map(|m| {
                nodes.iter().map(move |&v| {
                    let mut m = m.clone();
                    m.insert(*j, v);
                    m
                })
            })
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn worst_case_witness_survives_sampled_realizations((net, sched) in case(), seed in any::<u64>()) {
        let verifier = Verifier::new(&net, &sched).mode(Mode::Worst);
        let realizations: Vec<_> = (0..50).map(|k| sample_realization(&net, &sched, seed.wrapping_add(k))).collect();
        for v in net.node_ids() {
            let ctx = verifier.context(v);
            for t in verifier.critical_times(v) {
                let record = verifier.evaluate_mode(&ctx, t, Mode::Worst).worst.unwrap();
                let Some(witness) = record.outcome.witness() else { continue };
                let choice = choices_from_witness(&record.system, witness);
                for (k, r) in realizations.iter().enumerate() {
                    let trace = simulate_closure(&net, &sched, r, v, t, &choice, Semantics::RightOpen).unwrap();
                    prop_assert!(trace.is_safe(), "closing {:?} at {}, sample {}: {:?}", v, t, k, trace.violations);
                }
            }
        }
    }
}

/// The best-case system bounds unaffected flights by their whole nominal
/// interval, so a realization in which one leaves early can admit a
/// diversion the system rejects.
#[test]
fn best_case_unsafe_can_still_admit_a_diversion() {
    let mut net = fixtures::example1_network();
    for (v, c) in [("v2", 1), ("v3", 1), ("v4", 1), ("v5", 2), ("v6", 1), ("v7", 2)] {
        net = net.with_capacity(net.node_by_name(v).unwrap(), Capacity::Finite(c));
    }
    let sched = ScheduleSpec::new()
        .flight("F0", "R3", units(17))
        .flight("F1", "R1", units(14))
        .build(&net)
        .unwrap();
    let v2 = net.node_by_name("v2").unwrap();
    let v3 = net.node_by_name("v3").unwrap();
    let (f0, f1) = (FlightId(0), FlightId(1));
    let verifier = Verifier::new(&net, &sched).mode(Mode::Best);
    assert_eq!(verifier.evaluate_at(v3, units(26)).best_safe(), Some(false));

    // F0 leaves v2 at 26; F1 is still on e2.
    let r = vertiport_safety::oracle::Realization {
        travel: vec![
            vec![units(8), units(4), units(3), units(3)],
            vec![units(10), units(3), units(4)],
        ],
    };
    let options = reroute_options(&net, &sched, &r, v3, units(26));
    assert_eq!(options.iter().map(|o| o.0).collect::<Vec<_>>(), vec![f1]);
    let choice = BTreeMap::from([(f1, v2)]);
    let trace = simulate_closure(&net, &sched, &r, v3, units(26), &choice, Semantics::RightOpen).unwrap();
    assert!(trace.is_safe(), "{:?}", trace.violations);
    assert!(matches!(trace.statuses[f0.index()], vertiport_safety::oracle::FlightStatus::Unaffected));
}

#[test]
fn example_two_forced_realization_overflows_for_every_choice() {
    let net = fixtures::example2_network(2, 1);
    let sched = fixtures::example2_schedule(&net, units(10));
    let v4 = net.node_by_name("v4").unwrap();
    // S1 slow on e1 and e3, S3 fast: S1 is still on e3 at 15 while S3 reaches v3.
    let r = vertiport_safety::oracle::Realization {
        travel: vec![vec![units(10), units(6)], vec![units(9), units(4)], vec![units(8), units(3)]],
    };
    let options = reroute_options(&net, &sched, &r, v4, units(15));
    assert_eq!(options.len(), 1);
    for choice in all_choices(&options) {
        let trace = simulate_closure(&net, &sched, &r, v4, units(15), &choice, Semantics::RightOpen).unwrap();
        assert!(!trace.is_safe(), "{choice:?}");
    }
}

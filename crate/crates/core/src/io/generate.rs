//! Random nominally feasible schedules by incremental rejection sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{peak_overlap, Flight, FlightTimeline, Network, RouteId, Schedule, ScheduleSpec, Semantics};
use crate::time::Time;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerateOptions {
    pub count: usize,
    pub seed: u64,
    /// Departures are uniform over `[0, count * spacing]`.
    pub spacing: Time,
    /// Rejected draws allowed per flight before giving up.
    pub attempts_per_flight: usize,
    pub semantics: Semantics,
}

impl GenerateOptions {
    pub fn new(count: usize, seed: u64) -> Self {
        GenerateOptions {
            count,
            seed,
            spacing: Time::from_units(1),
            attempts_per_flight: 1000,
            semantics: Semantics::default(),
        }
    }
}

/// Draws flights one at a time on uniformly chosen routes and keeps a draw
/// only if the schedule stays nominally feasible.
pub fn generate_schedule(network: &Network, opts: &GenerateOptions) -> Result<Schedule> {
    if network.routes().is_empty() {
        return Err(Error::Usage("the network has no routes".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let span = opts.spacing.ticks() * opts.count as i64;
    // Draw on the input grid so the file round-trips exactly.
    let steps = span / Time::from_millis(1).ticks();
    let mut per_node: Vec<Vec<(Time, Time)>> = vec![Vec::new(); network.nodes().len()];
    let mut spec = ScheduleSpec::new();
    let budget = opts.count.saturating_mul(opts.attempts_per_flight);
    let mut attempts = 0;
    let width = opts.count.to_string().len();
    while spec.flights.len() < opts.count {
        if attempts == budget {
            return Err(Error::GenerationBudgetExceeded {
                attempts,
                placed: spec.flights.len(),
                requested: opts.count,
            });
        }
        attempts += 1;
        let route = RouteId(rng.gen_range(0..network.routes().len()));
        let departure = Time::from_millis(rng.gen_range(0..=steps));
        let flight = Flight {
            name: String::new(),
            route,
            departure,
        };
        let tl = FlightTimeline::compute(network, &flight);
        let fits = tl.stops.iter().all(|s| {
            let Some(cap) = network.capacity(s.node).finite() else {
                return true;
            };
            let (lo, hi) = s.occupancy();
            let overlapping = per_node[s.node.index()]
                .iter()
                .filter(|&&(a, b)| opts.semantics.contains(lo, hi, a) || opts.semantics.contains(a, b, lo))
                .map(|&(a, b)| (a.max(lo), b.min(hi)));
            peak_overlap(overlapping, opts.semantics, None).0 < cap
        });
        if !fits {
            continue;
        }
        for s in &tl.stops {
            per_node[s.node.index()].push(s.occupancy());
        }
        let name = format!("J{:0width$}", spec.flights.len() + 1);
        spec = spec.flight(&name, &network.route(route).name, departure);
    }
    Ok(spec.build(network)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::check_feasible;

    #[test]
    fn single_flight_always_fits() {
        let net = fixtures::example2_network(1, 1);
        let s = generate_schedule(&net, &GenerateOptions::new(1, 9)).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn generated_schedules_are_feasible_and_reproducible() {
        let net = fixtures::example1_network();
        for seed in 0..5 {
            let mut opts = GenerateOptions::new(40, seed);
            opts.spacing = Time::from_units(5);
            let s = generate_schedule(&net, &opts).unwrap();
            assert_eq!(s.len(), 40);
            assert!(check_feasible(&net, &s, Semantics::RightOpen).feasible);
            assert_eq!(s, generate_schedule(&net, &opts).unwrap());
        }
    }

    #[test]
    fn raised_capacities_fit_a_hundred_flights() {
        let net = fixtures::example1_network().with_raised_capacities(10);
        let s = generate_schedule(&net, &GenerateOptions::new(100, 0)).unwrap();
        assert!(check_feasible(&net, &s, Semantics::RightOpen).feasible);
    }

    #[test]
    fn impossible_requests_exhaust_the_budget() {
        let net = fixtures::example2_network(1, 1).with_capacity(
            fixtures::example2_network(1, 1).node_by_name("v2").unwrap(),
            crate::Capacity::Finite(0),
        );
        let mut opts = GenerateOptions::new(3, 1);
        opts.attempts_per_flight = 10;
        assert!(matches!(
            generate_schedule(&net, &opts),
            Err(Error::GenerationBudgetExceeded { attempts: 30, placed: 0, requested: 3 })
        ));
    }
}

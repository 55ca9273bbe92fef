use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::model::network::{Network, RouteId};
use crate::time::Time;

/// Index of a flight within its schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FlightId(pub usize);

impl FlightId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flight {
    pub name: String,
    pub route: RouteId,
    pub departure: Time,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSpec {
    #[serde(default)]
    pub flights: Vec<FlightSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlightSpec {
    pub id: String,
    pub route: String,
    pub depart: Time,
}

impl ScheduleSpec {
    pub fn new() -> Self {
        ScheduleSpec::default()
    }

    pub fn flight(mut self, id: &str, route: &str, depart: Time) -> Self {
        self.flights.push(FlightSpec {
            id: id.to_string(),
            route: route.to_string(),
            depart,
        });
        self
    }

    pub fn build(&self, network: &Network) -> Result<Schedule, ModelError> {
        Schedule::from_spec(network, self)
    }
}

/// Validated schedule: each flight is a route and a departure time.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Schedule {
    flights: Vec<Flight>,
}

impl Schedule {
    pub fn from_spec(network: &Network, spec: &ScheduleSpec) -> Result<Schedule, ModelError> {
        let mut seen = HashSet::new();
        let mut flights = Vec::with_capacity(spec.flights.len());
        for f in &spec.flights {
            if !seen.insert(f.id.as_str()) {
                return Err(ModelError::InvalidSchedule(format!("duplicate flight id `{}`", f.id)));
            }
            let route = network.route_by_name(&f.route).ok_or_else(|| {
                ModelError::InvalidSchedule(format!("flight `{}`: unknown route `{}`", f.id, f.route))
            })?;
            if f.depart < Time::ZERO {
                return Err(ModelError::InvalidSchedule(format!(
                    "flight `{}`: departure time must be non-negative",
                    f.id
                )));
            }
            flights.push(Flight {
                name: f.id.clone(),
                route,
                departure: f.depart,
            });
        }
        Ok(Schedule { flights })
    }

    pub fn to_spec(&self, network: &Network) -> ScheduleSpec {
        ScheduleSpec {
            flights: self
                .flights
                .iter()
                .map(|f| FlightSpec {
                    id: f.name.clone(),
                    route: network.route(f.route).name.clone(),
                    depart: f.departure,
                })
                .collect(),
        }
    }

    pub fn flights(&self) -> &[Flight] {
        &self.flights
    }

    pub fn flight(&self, id: FlightId) -> &Flight {
        &self.flights[id.index()]
    }

    pub fn ids(&self) -> impl Iterator<Item = FlightId> {
        (0..self.flights.len()).map(FlightId)
    }

    pub fn len(&self) -> usize {
        self.flights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flights.is_empty()
    }

    pub fn flight_by_name(&self, name: &str) -> Option<FlightId> {
        self.flights.iter().position(|f| f.name == name).map(FlightId)
    }

    /// Copy with every departure shifted by `delta`.
    pub fn shifted(&self, delta: Time) -> Schedule {
        Schedule {
            flights: self
                .flights
                .iter()
                .map(|f| Flight {
                    departure: f.departure + delta,
                    ..f.clone()
                })
                .collect(),
        }
    }

    /// Copy with one flight's departure replaced.
    pub fn with_departure(&self, id: FlightId, departure: Time) -> Schedule {
        let mut s = self.clone();
        s.flights[id.index()].departure = departure;
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rejects_unknown_route_and_duplicates() {
        let net = fixtures::example2_network(2, 1);
        let bad_route = ScheduleSpec::new().flight("a", "R9", Time::ZERO);
        assert!(bad_route.build(&net).is_err());
        let dup = ScheduleSpec::new()
            .flight("a", "R1", Time::ZERO)
            .flight("a", "R2", Time::ZERO);
        assert!(dup.build(&net).is_err());
        let negative = ScheduleSpec::new().flight("a", "R1", -Time::from_units(1));
        assert!(negative.build(&net).is_err());
    }
}

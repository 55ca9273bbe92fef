//! TOML network and schedule files.
//!
//! ```toml
//! w = 1
//!
//! [[nodes]]
//! id = "v1"              # no capacity: unbounded
//! [[nodes]]
//! id = "v2"
//! capacity = 2
//!
//! [[links]]
//! id = "e1"
//! tail = "v1"
//! head = "v2"
//! tmin = 8
//! tmax = "10.5"
//! backups = ["v1", "v2"]
//!
//! [[routes]]
//! id = "R1"
//! links = ["e1"]
//! ```
//!
//! Schedules list `[[flights]]` with `id`, `route` and `depart`. Times may be
//! integers, floats or decimal strings with at most three decimals.

use std::path::Path;

use crate::error::{FormatError, ModelError};
use crate::model::{Network, NetworkSpec, Schedule, ScheduleSpec};

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn syntax_error(text: &str, path: &str, err: toml::de::Error) -> FormatError {
    let line = err.span().map_or(1, |s| line_of(text, s.start));
    FormatError::Parse {
        path: path.to_string(),
        line,
        message: err.message().trim().to_string(),
    }
}

/// Points a validation error at the first line mentioning the first
/// backquoted name in its message.
fn model_error(text: &str, path: &str, err: ModelError) -> FormatError {
    let message = err.to_string();
    let line = message
        .split('`')
        .nth(1)
        .and_then(|name| text.find(&format!("\"{name}\"")))
        .map(|offset| line_of(text, offset));
    match line {
        Some(line) => FormatError::Parse {
            path: path.to_string(),
            line,
            message,
        },
        None => FormatError::Invalid {
            path: path.to_string(),
            message,
        },
    }
}

pub fn parse_network(text: &str, path: &str) -> Result<Network, FormatError> {
    let spec: NetworkSpec = toml::from_str(text).map_err(|e| syntax_error(text, path, e))?;
    Network::from_spec(&spec).map_err(|e| model_error(text, path, e))
}

pub fn parse_schedule(text: &str, path: &str, network: &Network) -> Result<Schedule, FormatError> {
    let spec: ScheduleSpec = toml::from_str(text).map_err(|e| syntax_error(text, path, e))?;
    Schedule::from_spec(network, &spec).map_err(|e| model_error(text, path, e))
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_network(path: &Path) -> Result<Network, FormatError> {
    parse_network(&read(path)?, &path.display().to_string())
}

pub fn read_schedule(path: &Path, network: &Network) -> Result<Schedule, FormatError> {
    parse_schedule(&read(path)?, &path.display().to_string(), network)
}

/// Canonical file text: times as decimal strings, fields in fixed order.
pub fn network_to_toml(network: &Network) -> String {
    toml::to_string(&network.to_spec()).expect("network specs serialize")
}

pub fn schedule_to_toml(schedule: &Schedule, network: &Network) -> String {
    toml::to_string(&schedule.to_spec(network)).expect("schedule specs serialize")
}

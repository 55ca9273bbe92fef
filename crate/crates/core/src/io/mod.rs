//! Files in and out: inputs, reports, series, generated schedules, benchmarks.

pub mod benchmark;
pub mod generate;
pub mod input;
pub mod report;
pub mod series;

pub use benchmark::{fit_exponent, run_benchmark, BenchmarkRow, BenchmarkTable};
pub use generate::{generate_schedule, GenerateOptions};
pub use input::{network_to_toml, parse_network, parse_schedule, read_network, read_schedule, schedule_to_toml};
pub use report::{render_report, report_json};
pub use series::{occupancy_series, Series, SeriesTarget, INFEASIBLE, SAFE};

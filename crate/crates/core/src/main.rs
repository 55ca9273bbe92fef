//! `vertisafe`: closure-safety checks for vertiport schedules.
//!
//! Exit status: 0 safe, 2 unsafe, 1 bad input or usage.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use vertiport_safety::io::{self, GenerateOptions, SeriesTarget};
use vertiport_safety::model::{check_feasible, Network, NodeId, Schedule};
use vertiport_safety::verify::{Mode, Scope, Verifier};
use vertiport_safety::{Error, Result, Semantics, Time};

#[derive(Parser)]
#[command(name = "vertisafe", version, about = "Single-closure safety verification for vertiport flight schedules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check worst- and/or best-case safety and write a JSON report.
    Verify(VerifyArgs),
    /// Write the worst-case occupancy series of one node or link as TSV.
    EmitSeries(SeriesArgs),
    /// Generate a random nominally feasible schedule.
    Generate(GenerateArgs),
    /// Time full worst-case verification for growing schedule sizes.
    Benchmark(BenchmarkArgs),
    /// Replay safe scenarios against random travel-time realizations.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct Inputs {
    #[arg(long)]
    network: PathBuf,
    #[arg(long)]
    schedule: PathBuf,
    #[arg(long, default_value = "right-open")]
    semantics: Semantics,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    inputs: Inputs,
    #[arg(long, default_value = "both")]
    mode: Mode,
    /// Closed node; all nodes when omitted.
    #[arg(long)]
    node: Option<String>,
    /// Single closure time (requires --node).
    #[arg(long, requires = "node")]
    time: Option<Time>,
    /// Worker threads, 0 for all cores.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Analyse even if the schedule is not nominally feasible.
    #[arg(long)]
    force: bool,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add wall-clock time to the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    inputs: Inputs,
    /// Closed node.
    #[arg(long)]
    closed: String,
    /// Node whose occupancy is decomposed.
    #[arg(long, conflicts_with = "link", required_unless_present = "link")]
    node: Option<String>,
    /// Link into the closed node whose flights are redistributed.
    #[arg(long)]
    link: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    network: PathBuf,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Departures spread over count * spacing time units.
    #[arg(long, default_value = "1")]
    spacing: Time,
    /// Raise every finite capacity before generating.
    #[arg(long, default_value_t = 0)]
    raise_capacity: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchmarkArgs {
    #[arg(long)]
    network: PathBuf,
    /// Comma-separated, ascending.
    #[arg(long, value_delimiter = ',', default_value = "100,200,300,400,500,600,700,800,900,1000")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    raise_capacity: u32,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Timed runs per size; the fastest is reported.
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    inputs: Inputs,
    /// Closed node; all non-source nodes when omitted.
    #[arg(long)]
    node: Option<String>,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(Error::Io),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn node(network: &Network, name: &str) -> Result<NodeId> {
    network.node_by_name(name).ok_or_else(|| Error::UnknownId {
        kind: "node",
        name: name.to_string(),
    })
}

fn load(inputs: &Inputs) -> Result<(Network, Schedule)> {
    let network = io::read_network(&inputs.network)?;
    let schedule = io::read_schedule(&inputs.schedule, &network)?;
    Ok((network, schedule))
}

fn require_feasible(network: &Network, schedule: &Schedule, semantics: Semantics) -> Result<()> {
    let report = check_feasible(network, schedule, semantics);
    match report.violation {
        None => Ok(()),
        Some(v) => Err(Error::InfeasibleSchedule(format!(
            "node `{}` holds {} flights at t = {} but has capacity {} (use --force to continue)",
            network.node(v.node).name,
            v.flights.len(),
            v.time,
            v.capacity
        ))),
    }
}

/// `Ok(true)` when safe.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Verify(a) => {
            let (network, schedule) = load(&a.inputs)?;
            if !a.force {
                require_feasible(&network, &schedule, a.inputs.semantics)?;
            }
            let scope = match (&a.node, a.time) {
                (Some(n), Some(t)) => Scope::TimeNode(node(&network, n)?, t),
                (Some(n), None) => Scope::Node(node(&network, n)?),
                (None, _) => Scope::All,
            };
            let verifier = Verifier::new(&network, &schedule)
                .semantics(a.inputs.semantics)
                .mode(a.mode)
                .jobs(a.jobs);
            let start = Instant::now();
            let report = verifier.verify(scope);
            let elapsed = a.timing.then(|| start.elapsed().as_secs_f64());
            write_out(a.out.as_deref(), &io::render_report(&report, &network, &schedule, elapsed))?;
            for n in &report.nodes {
                eprintln!(
                    "{}: worst {} best {} ({} scenarios)",
                    network.node(n.node).name,
                    verdict(n.worst),
                    verdict(n.best),
                    n.scenarios
                );
            }
            Ok(report.is_safe())
        }
        Command::EmitSeries(a) => {
            let (network, schedule) = load(&a.inputs)?;
            let closed = node(&network, &a.closed)?;
            let target = match (&a.node, &a.link) {
                (Some(n), _) => SeriesTarget::Node(node(&network, n)?),
                (None, Some(l)) => {
                    let e = network.link_by_name(l).ok_or_else(|| Error::UnknownId {
                        kind: "link",
                        name: l.clone(),
                    })?;
                    SeriesTarget::Link(e)
                }
                (None, None) => return Err(Error::Usage("give --node or --link".into())),
            };
            let verifier = Verifier::new(&network, &schedule).semantics(a.inputs.semantics);
            let series = io::occupancy_series(&verifier, closed, target);
            write_out(a.out.as_deref(), &series.to_tsv())?;
            let stretches = io::series::unsafe_stretches(&series);
            eprint!("{stretches}");
            Ok(stretches.is_empty())
        }
        Command::Generate(a) => {
            let network = io::read_network(&a.network)?.with_raised_capacities(a.raise_capacity);
            let mut opts = GenerateOptions::new(a.count, a.seed);
            opts.spacing = a.spacing;
            let schedule = io::generate_schedule(&network, &opts)?;
            write_out(a.out.as_deref(), &io::schedule_to_toml(&schedule, &network))?;
            Ok(true)
        }
        Command::Benchmark(a) => {
            if a.sizes.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::Usage("--sizes must be ascending".into()));
            }
            let network = io::read_network(&a.network)?.with_raised_capacities(a.raise_capacity);
            let table = io::run_benchmark(&network, &a.sizes, a.seed, a.jobs, a.repeats)?;
            write_out(a.out.as_deref(), &table.to_string())?;
            Ok(true)
        }
        Command::Simulate(a) => {
            let (network, schedule) = load(&a.inputs)?;
            require_feasible(&network, &schedule, a.inputs.semantics)?;
            let nodes: Vec<NodeId> = match &a.node {
                Some(n) => vec![node(&network, n)?],
                None => network.node_ids().filter(|&v| !network.is_source(v)).collect(),
            };
            let verifier = Verifier::new(&network, &schedule)
                .semantics(a.inputs.semantics)
                .jobs(a.jobs);
            let mut clean = true;
            for v in nodes {
                let mc = verifier.monte_carlo(v, a.samples, a.seed);
                println!(
                    "{}\tscenarios {}\tsafe {}\tsimulations {}\tviolations {}",
                    network.node(v).name,
                    mc.scenarios,
                    mc.safe_scenarios,
                    mc.simulations,
                    mc.failures.len()
                );
                for f in mc.failures.iter().take(5) {
                    println!(
                        "  t_c = {} sample {}: node `{}` reaches {} > {} at {}",
                        f.time,
                        f.sample,
                        network.node(f.violation.node).name,
                        f.violation.occupancy,
                        f.violation.capacity,
                        f.violation.time
                    );
                }
                clean &= mc.failures.is_empty();
            }
            Ok(clean)
        }
    }
}

fn verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "safe",
        Some(false) => "unsafe",
        None => "-",
    }
}

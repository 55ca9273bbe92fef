use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("malformed transport instance: {0}")]
    MalformedInstance(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search space of {size} assignments exceeds the limit of {limit}")]
    SearchSpaceTooLarge { size: u128, limit: u128 },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimulationError {
    #[error("invalid reroute choice for flight `{flight}`: {reason}")]
    InvalidChoice { flight: String, reason: String },
}

/// Error reading one of the input files.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Simulation(#[from] SimulationError),
    #[error("schedule generation gave up after {attempts} attempts ({placed} of {requested} flights placed)")]
    GenerationBudgetExceeded {
        attempts: usize,
        placed: usize,
        requested: usize,
    },
    #[error("unknown {kind} `{name}`")]
    UnknownId { kind: &'static str, name: String },
    #[error("schedule is not nominally feasible: {0}")]
    InfeasibleSchedule(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

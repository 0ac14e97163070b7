//! Library half of the `borealis` command line tool: scenario parsing,
//! presets, deterministic output writers, and the subcommand entry points.
//! The binary in `main.rs` is a thin argument-parsing shim over
//! [`commands`], which keeps every behavior reachable from integration
//! tests without spawning a process.

pub mod commands;
pub mod outputs;
pub mod presets;
pub mod scenario;

use std::path::PathBuf;

use borealis_core::constellation::ConfigError;
use borealis_core::geo::GeoError;
use borealis_core::link_budget::LinkBudgetError;
use borealis_core::metrics::MetricsError;
use borealis_core::propagation::GridError;
use borealis_core::visibility::VisibilityError;
use thiserror::Error;

/// Version string stamped into every output header.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

// ===== Error type and exit codes =====

/// Everything a subcommand can fail with. Validation problems exit with
/// code 2, I/O problems with code 3; success is 0.
#[derive(Debug, Error)]
pub enum CliError {
    /// Scenario text that does not parse; the TOML error carries the
    /// line/column and field path.
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: Box<toml::de::Error>,
    },
    /// A structurally valid scenario that violates an invariant.
    #[error("invalid scenario: {0}")]
    Invalid(String),
    /// Malformed command-line value (range syntax, shell spec, ...).
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Geo(#[from] GeoError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Visibility(#[from] VisibilityError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    LinkBudget(#[from] LinkBudgetError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 3,
            _ => 2,
        }
    }

    /// Wrap an I/O error with the path it happened on.
    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

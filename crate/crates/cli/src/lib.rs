//! Library side of the `qreduce` command-line tool: argument parsing
//! with config-file merging, dispatch into the workbench, and
//! deterministic text/CSV/JSON emission.

mod args;
mod record;
mod runner;

pub use args::{
    command_tree, parse_args, BracketSystem, CommandConfig, ConfinementArg, CurveShape,
    LayersimGeometry, LayersimKnobs, OutputFormat, RecipeGeometryArg, RunConfig, SurfaceShape,
    VqMethod,
};
pub use record::{emit, fmt_human, fmt_sig, round_sig12, Cell, NamedValue, ResultRecord, Table};
pub use runner::run;

/// Errors split by exit status: 2 for usage, 3 for numeric failures.
/// `Help` carries rendered help/version text and exits 0.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
    Help(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Help(_) => 0,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Numeric(m) => write!(f, "error: {m}"),
            CliError::Help(m) => write!(f, "{m}"),
        }
    }
}

impl From<qreduce_core::Error> for CliError {
    fn from(e: qreduce_core::Error) -> Self {
        match e {
            qreduce_core::Error::Usage(m) => CliError::Usage(format!("invalid usage: {m}")),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

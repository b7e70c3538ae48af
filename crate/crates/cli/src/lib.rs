//! The `tangram` command line: argument types, the JSON solution document and
//! the verify report.

pub mod args;
pub mod document;
pub mod error;
pub mod run;
pub mod verify;

pub use args::Cli;
pub use document::{DocumentError, SolutionDocument};
pub use error::CliError;
pub use run::{load_catalog, resolve_shape, run, Target};
pub use verify::{run_verify, VerifyReport, EXPECTED_COUNTS};

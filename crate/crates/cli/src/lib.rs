//! Library side of the `charsum-curves` binary: argument types, command
//! runners, verification scans and report emitters.

pub mod commands;
pub mod config;
pub mod lemmas;
pub mod report;
pub mod verify;

pub use config::{CliError, FieldArg, MethodSelection, Outcome, OutputFormat, RunConfig};
pub use report::{emit_report, VerificationRecord};
pub use verify::{run_verify_scan, Suite};

//! Command-line front end for `ptosc-core`.
//!
//! The binary `ptosc` is a thin shell over this library: every subcommand
//! builds its data through a public function here, so the integration and
//! acceptance suites can drive the same code paths without spawning
//! processes.

pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod output;
pub mod parse;
pub mod presets;
pub mod verify;

pub use error::{CliError, ExitCode};

/// Written into every emitted file.
pub const GENERATED_BY: &str = concat!("ptosc-", env!("CARGO_PKG_VERSION"));

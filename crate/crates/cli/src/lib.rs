//! Batch front end: file formats, subcommands and JSON reports.

pub mod formats;
pub mod report;
pub mod run;

pub use formats::{emit_complex, emit_cosheaf, emit_matching, parse_complex, parse_cosheaf, parse_matching, ParseError};
pub use report::Report;
pub use run::{main_with_args, run, CliError, Command};

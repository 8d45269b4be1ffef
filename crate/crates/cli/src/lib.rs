//! gprMax-style front end for Debye expansion fitting.
//!
//! Parses material commands such as
//! `#havriliak_negami: 1e7 1e11 0.91 0.45 2.7 5.9 9.4e-10 0.1 1 0 5 Kelley`,
//! fits them, and emits the matching `#material:` and
//! `#add_dispersion_debye:` lines.

pub mod command;
pub mod error;
pub mod output;
pub mod run;

pub use command::{parse_command, MaterialCommand, ModelSpec, PassThrough};
pub use error::{CliError, ParseError};
pub use output::{format_number, MaterialOutput};
pub use run::{run_command, run_file, run_source, CliOptions, Diagnostic, RunSummary};

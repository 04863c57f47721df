//! Batch front end: documents, seeded generation and command functions.

pub mod commands;
pub mod generate;
pub mod io;
pub mod report;

pub use commands::{
    cmd_eval, cmd_optimal, cmd_ratio, cmd_run, cmd_verify, cmd_witness, ExitStatus, Grid, HarnessError, VerifyTarget,
};
pub use generate::{random_instance, RunConfig};
pub use io::{parse_instance, parse_instance_file, serialize_instance, InstanceFile, ParseError};

//! File formats, the property suite and the command line for `grassmann-core`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod io;
pub mod verify;

pub use error::{CliError, CliResult};

//! Command-line front end: single-point bounds, parameter sweeps, figure
//! data and the Fock-space cross-check.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod sweep;
pub mod table;

pub use error::{CliError, Result};

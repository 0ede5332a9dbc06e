// SPDX-License-Identifier: Apache-2.0

//! Library side of the `mdkit` command-line tool: file formats, the dense
//! point generator, the covering benchmark and the command bodies.

pub mod bench;
pub mod commands;
pub mod error;
pub mod gen;
pub mod input;

pub use error::{CliError, CliResult};

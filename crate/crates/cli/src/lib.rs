//! Library side of the `revassign` command: file formats and the
//! subcommands, kept callable from tests.

pub mod commands;
pub mod formats;

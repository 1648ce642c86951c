//! File formats, DOT output and subcommands behind the `nlc2` binary.

pub mod commands;
pub mod dot;
pub mod format;

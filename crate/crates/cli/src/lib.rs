//! Library side of the `teneig` command-line tool: argument definitions,
//! command implementations, renderers, and basin rasters. The binary in
//! `main.rs` only parses arguments and maps failures to exit codes.

pub mod args;
pub mod basins;
pub mod commands;
pub mod render;

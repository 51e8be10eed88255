//! File formats and command line for `halcece-core`.

pub mod cli;
pub mod io;
pub mod report;

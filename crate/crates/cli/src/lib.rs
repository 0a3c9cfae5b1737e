//! Command-line front end for `kernelkit`: graph file IO, JSON reports and
//! traces, and benchmark sweeps.

pub mod bench;
pub mod cli;
pub mod io;
pub mod report;

//! Command-line front end for `meanlab`: argument parsing, run configs and
//! report rendering. The binary is a thin wrapper over [`run::execute`].

pub mod cli;
pub mod config;
pub mod report;
pub mod run;

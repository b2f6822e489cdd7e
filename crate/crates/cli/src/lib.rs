//! Experiment runner and command-line front end for `cliquelab`.

pub mod cli;
pub mod construct;
pub mod experiments;
pub mod formulas;
pub mod params;
pub mod plot;
pub mod record;
pub mod runner;
pub mod spec;

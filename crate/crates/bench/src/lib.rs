//! Experiment harness for `tspevo`: exact oracles, table presets, the
//! parallel run grid and CSV output.

pub mod cli;
pub mod experiment;
pub mod instances;
pub mod oracle;
pub mod report;
pub mod validate;

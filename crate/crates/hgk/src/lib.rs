//! File formats, reports and commands for the `hgk` tool.

pub mod commands;
pub mod document;
pub mod report;

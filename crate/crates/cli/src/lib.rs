//! Command-line front end: formula syntax, reports, scenarios and the verification suites.

pub mod app;
pub mod commands;
pub mod corpus;
pub mod oracle;
pub mod report;
pub mod scenario;
pub mod suites;
pub mod syntax;

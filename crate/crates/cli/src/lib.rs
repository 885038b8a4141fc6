//! Front-end plumbing for the quotient-analysis command line: action-file
//! parsing and report construction.

pub mod actionfile;
pub mod report;

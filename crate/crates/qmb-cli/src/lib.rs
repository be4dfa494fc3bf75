//! Command-line front end: argument parsing, the JSON-lines report format and
//! the command implementations behind the `qmb` binary.

pub mod args;
pub mod jsonl;
pub mod run;

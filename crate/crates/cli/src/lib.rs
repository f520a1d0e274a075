//! Library surface of the command line tool, exposed for integration
//! tests: input parsing, artifact emission and pipeline orchestration.

pub mod input;
pub mod output;
pub mod pipeline;

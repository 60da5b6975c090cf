//! Library side of the `corrtest` command: CSV ingestion, single-test
//! reports and table reproduction.

// `!(x < bound)` checks are intentional: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod ingest;
pub mod report;
pub mod reproduce;

pub use error::{CliError, Result, EXIT_PARSE, EXIT_VALIDATION};
pub use ingest::ingest_csv;
pub use report::{run_test, Entry, Input, Meta, Report, TestRequest};
pub use reproduce::{reproduce, ReproduceOptions, Target};

//! Verification suites, reports and parameter sweeps behind the `grolab` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod report;
pub mod run;
pub mod suites;
pub mod sweep;

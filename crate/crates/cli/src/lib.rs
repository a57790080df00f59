//! Command-line front end for `twalex-core`: JSON documents in, JSON reports out.

pub mod commands;
pub mod corpus;
pub mod error;
pub mod expr;
pub mod schema;
pub mod selftest;

pub use error::CliError;

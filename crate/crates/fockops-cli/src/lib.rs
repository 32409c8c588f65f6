//! Library half of the `fockops` CLI: request structs, runners and
//! serializers shared between the binary and the test suites.
//!
//! Every runner returns a JSON value that embeds the fully resolved
//! request, so identical invocations produce byte-identical output.

pub mod parse;
pub mod runners;

pub use runners::*;

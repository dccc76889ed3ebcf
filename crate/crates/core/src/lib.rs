//! Rees algebras and special fibers of binomial edge ideals of closed graphs.

pub mod catalog;
pub mod config;
mod error;
pub mod graph;
pub mod hilbert;
pub mod poly;
pub mod rees;
pub mod report;

pub use config::{FieldChoice, RunConfig};
pub use error::{Certificate, Error, ParseError, ParseErrorKind, Result};

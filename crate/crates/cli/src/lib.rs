//! Library side of the airytau command line: argument schema, JSON/CSV
//! encoding, run manifests, and the acceptance suite (shared between the
//! binary and the integration tests).

pub mod commands;
pub mod io;
pub mod manifest;
pub mod suite;

pub use commands::{run, Cli};

//! Library side of the verification tool: configuration resolution, the
//! check catalog, and suite assembly. The binary in `main.rs` is a thin
//! argument-parsing shell over these modules.

pub mod checks;
pub mod config;
pub mod suite;

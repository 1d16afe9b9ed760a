//! Exact finite-field analysis of quartic surfaces in P³ that contain a line.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod families;
pub mod flexline;
pub mod galois;
pub mod linalg;
pub mod mpoly;
pub mod pencil;
pub mod verify;

pub use error::{Error, Result};

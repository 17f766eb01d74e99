//! Fault-path analysis, depth accounting and threshold estimation for
//! concatenated [[7,1,3]] error correction with flag gadgets.

pub mod circuit;
pub mod cli;
pub mod depth;
pub mod error;
pub mod faults;
pub mod pauli;
pub mod resources;
pub mod threshold;
pub mod verify;

pub use error::{Error, Result};

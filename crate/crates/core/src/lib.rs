pub mod bounds;
pub mod cli;
pub mod counting;
pub mod error;
pub mod frobenius;
pub mod injections;
pub mod lemmas;
pub mod pairing;
pub mod partition;
pub mod qseries;

pub use error::{Error, Result};

pub mod cli;
pub mod error;
pub mod gwcalc;
pub mod numeric;
pub mod partitions;
pub mod qring;
pub mod rootdata;
pub mod symfun;
pub mod toeplitz;
pub mod totalpos;
pub mod verify;

pub use error::{Error, Result};

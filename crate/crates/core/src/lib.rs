pub mod cli;
pub mod commit;
pub mod error;
pub mod fiatshamir;
pub mod gf2;
pub mod harness;
pub mod idscheme;
pub mod params;
pub mod primitives;
pub mod stern;

pub use error::{Error, Result};

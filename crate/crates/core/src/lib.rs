pub mod cdg;
pub mod circuits;
pub mod cli;
pub mod ecw;
pub mod families;
pub mod json;
pub mod walks;
mod basis;
pub mod error;
pub mod exactla;
pub mod polyhedron;

pub use error::{Error, Result};

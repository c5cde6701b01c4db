pub mod error;
pub mod linear;
pub mod magnus;
pub mod surface;
pub mod dims;
pub mod jq;
pub mod finite;
pub mod es;
pub mod workbench;

pub use error::{Error, Result};

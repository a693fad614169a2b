pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod clausal;
pub mod error;
pub mod format;
pub mod witness;

pub use error::{Error, Result};

pub mod catalog;
pub mod cli;
pub mod deficiency;
pub mod error;
pub mod format;
pub mod hvalue;
pub mod integral;
pub mod intervals;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod space;

pub use error::{Error, Result};
pub use hvalue::{HNonNeg, HValue};

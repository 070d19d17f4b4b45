pub mod construct;
pub mod error;
pub mod measure;
pub mod metric;
pub mod pairclass;
pub mod rational;
pub mod symseq;
pub mod witness;

pub use error::{Error, Result};

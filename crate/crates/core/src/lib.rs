pub mod algebra;
pub mod arith;
pub mod cellular;
pub mod error;
pub mod frobenius;
pub mod jordan;
pub mod oracle;
pub mod sampling;

pub use error::{Error, Result};

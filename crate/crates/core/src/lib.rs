pub mod error;
pub mod exact;
pub mod lp;
pub mod colorful;
pub mod steinitz;
pub mod blockip;
pub mod oracles;
pub mod harness;

pub use error::{Error, Result};

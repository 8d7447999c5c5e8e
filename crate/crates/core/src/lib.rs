pub mod error;
pub mod genfun;
pub mod hypergeom;
pub mod laguerre;
pub mod meixner;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod sobolev;
pub mod verify;

pub use error::{Error, Result};

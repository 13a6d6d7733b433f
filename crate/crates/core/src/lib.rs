pub mod charmod;
pub mod cmr;
pub mod corpus;
pub mod error;
pub mod groebner;
pub mod homology;
pub mod invariants;
pub mod polyring;
pub mod resolution;
pub mod run;

pub use error::{Error, Result};

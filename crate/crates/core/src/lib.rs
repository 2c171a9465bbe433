//! Finite 2-categories and double categories, pseudo-cones, slices, and
//! homotopy 2-limit checking by exhaustive enumeration.

pub mod budget;
pub mod cli;
pub mod cones;
pub mod corpus;
pub mod dblcat;
pub mod error;
pub mod fincat;
pub mod io;
pub mod nerve;
mod intern;
mod lazy;
pub mod report;
pub mod twocat;

pub use budget::Budget;
pub use error::{Error, Result};

//! Exact polyhedral cone calculus and constraint qualification checks for
//! disjunctive programs.

pub mod checks;
pub mod cones;
pub mod error;
pub mod fixtures;
pub mod kernel;
pub mod model;
pub mod multipliers;
pub mod oracle;
pub mod problem;
pub mod report;
pub mod table;

pub use error::{Error, Result};

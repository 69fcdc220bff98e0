//! Exact and floating-point machinery for the Humbert double hypergeometric
//! functions and their one-variable relatives.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod expr;
pub mod operator;
pub mod params;
pub mod profiles;
pub mod quadrature;
pub mod report;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use report::{Status, VerificationReport};
pub use params::{ParameterMap, Symbol};
pub use scalar::{Rational, Scalar};
pub use series::{Biseries, FunctionRef, Kind};

//! Truncated bivariate power series, the supported hypergeometric kinds,
//! and float summation of their defining series.

pub mod biseries;
pub mod eval;
pub mod kinds;
pub mod transform;

pub use biseries::{graded_lex, Biseries, TriangleJson};
pub use eval::{eval_double_series, eval_function, eval_single_series, SeriesDiagnostics};
pub use kinds::{FunctionRef, Kind, Run};
pub use transform::{binomial_x, compose, exp_y_scaled, substitute_args, ArgTransform};

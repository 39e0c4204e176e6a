//! Exact computations around the Koszulity of n-ary totally and partially
//! associative operads: truncated power series and their inverses, operad
//! dimensions from planar-tree relation spans, and the coefficient tests
//! built on them.

pub mod analysis;
pub mod analytic;
mod combinat;
pub mod error;
pub mod golden;
pub mod linalg;
pub mod operad;
pub mod series;

pub use error::{Error, Result};
pub use series::{ExactSeries, Parity};

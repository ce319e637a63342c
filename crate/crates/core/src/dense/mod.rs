//! Exact model checking on ℤ, ℚ, ℝ and their intervals.
//!
//! Extensions of formulas are finite unions of points and open intervals
//! whose endpoints are quadratic surds, so every clause of the semantics is
//! computed in closed form with rational arithmetic.

mod brute;
mod carrier;
mod linear_set;
mod model;
mod search;
mod surd;

pub use brute::brute_force_extension;
pub use carrier::{Base, Bound, Carrier};
pub use linear_set::{between_image, parse_components, Component, LinearSet};
pub use model::{DenseError, DenseModel, DenseReport};
pub use search::{half, search_countermodel, trial_rng, Countermodel, ValuationGen};
pub use surd::{Endpoint, Surd};

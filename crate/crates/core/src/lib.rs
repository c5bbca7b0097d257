//! Exact tropical differential algebra.
//!
//! The crate tropicalizes systems of algebraic (partial) differential
//! equations with truncated series coefficients, tests candidate supports
//! with the min-attained-twice criterion, and implements the shift,
//! ramification and combinatorial blow-up transformations that move
//! Laurent and Puiseux solutions into the formal power series setting.
//! A direct substitution oracle is available for every check.

pub mod diffpoly;
pub mod error;
pub mod frontend;
pub mod linalg;
pub mod rational;
pub mod scalar;
pub mod series;
pub mod transform;
pub mod transseries;
pub mod tropical;
pub mod tropicalize;

pub use diffpoly::{DiffMonomial, DiffPolynomial, GeneratorSet, JetVar};
pub use error::{Error, Result};
pub use rational::Q;
pub use scalar::{CoeffValuation, Scalar};
pub use series::{Exponent, SeriesSpace, SupportSet, TropSeries, TruncatedSeries};
pub use transform::TransformSpec;
pub use transseries::{BoolTransseries, LogMonomial};
pub use tropical::TropValue;
pub use tropicalize::TropDiffPolynomial;

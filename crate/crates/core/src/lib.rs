pub mod dirac_spectrum;
pub mod error;
pub mod f4_casimir;
pub mod holonomy;
pub mod linalg;
pub mod root_systems;
pub mod symmetric_pairs;

pub use error::{Error, Result};
pub use linalg::{InnerProduct, Rational, WeightVector};

//! Detecting common factors of bivariate Laurent polynomials from their
//! Newton polygons and the Puiseux germs of common roots at infinity.

pub mod amoeba;
pub mod error;
pub mod initial_system;
pub mod polygon;
pub mod pipeline;
pub mod plot;
pub mod polynomial;
pub mod puiseux;
pub mod unimodular;

pub use error::{Error, Result};
pub use pipeline::{preprocess, Certificate, Config, Status};
pub use polygon::{NewtonPolygon, Tropicalization, Tropism};
pub use polynomial::{parse_poly, Direction, ExponentVector, SparsePoly};

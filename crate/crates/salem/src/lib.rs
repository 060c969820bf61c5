//! Exact arithmetic over F_q[X] and F_q((1/X)) for monic polynomials in Y,
//! with Newton polygons, series root expansion, and Salem / Pisot / 2-Salem
//! classification, plus the expression parser and JSON output used by the
//! command line tool.

pub mod algebra;
pub mod bivar;
pub mod classify;
pub mod cli;
pub mod error;
pub mod irreducible;
pub mod polygon;
pub mod roots;

pub use algebra::{Degree, Fe, Field, FieldDesc, Floor, LaurentSeries, Poly};
pub use error::{Error, Result};

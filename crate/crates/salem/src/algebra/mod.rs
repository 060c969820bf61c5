//! Exact arithmetic building blocks: F_q, F_q[X], and F_q((1/X)).

pub mod field;
pub mod laurent;
pub mod poly;

pub use field::{Fe, Field, FieldDesc};
pub use laurent::{Floor, LaurentSeries};
pub use poly::{Degree, Poly};

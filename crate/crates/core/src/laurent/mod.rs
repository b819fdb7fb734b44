//! Arithmetic in A[z,1/z], its matrices, and the localization inverting 1-z.

pub mod localized;
pub mod matrix;
pub mod poly;

pub use localized::{st_to_z, z_to_st, LocalizedElement, STElement};
pub use matrix::LaurentMatrix;
pub use poly::{LaurentPoly, DEFAULT_DEGREE_CAP};

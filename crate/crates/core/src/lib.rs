//! Exact-arithmetic dictionary between Seifert modules/forms over a base
//! ring and Blanchfield modules/forms over its Laurent extension, together
//! with the knot cobordism invariants computed from Seifert matrices.

pub mod blanchfield;
pub mod error;
pub mod exact_linalg;
pub mod forms;
pub mod invariants;
pub mod json;
pub mod laurent;
pub mod rng;
pub mod seifert;
pub mod selftest;

pub use blanchfield::{BlanchfieldMorphism, BlanchfieldPresentation};
pub use error::{Error, Result};
pub use exact_linalg::{BaseRing, ExactMatrix, Scalar};
pub use forms::{BlanchfieldForm, Eta, LocalizedForm, SeifertForm};
pub use invariants::{alexander, determinant_invariant, invariant_report, signature};
pub use laurent::{LaurentMatrix, LaurentPoly, LocalizedElement, STElement};
pub use seifert::{SeifertModule, SeifertMorphism};

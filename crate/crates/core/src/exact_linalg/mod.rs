//! Exact dense linear algebra over Z, Q and Z/p: arithmetic, determinants,
//! inverses, linear system solving over the ring, nilpotency tests and
//! idempotent splitting.

pub mod matrix;
pub mod ring;
pub mod solve;
pub mod split;

pub use matrix::ExactMatrix;
pub use ring::{BaseRing, Scalar};
pub use solve::{solve_left, solve_matrix_system, solve_right, MatConstraint, MatTerm};
pub use split::{split_idempotent, IdempotentSplit};

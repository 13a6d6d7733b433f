//! Graded polynomial rings over GF(p) and free-module arithmetic.

mod field;
mod matrix;
mod monomial;
mod poly;
mod vector;

pub use field::{PrimeField, DEFAULT_CHARACTERISTIC};
pub use matrix::{FreeModule, GradedMatrix};
pub use monomial::{compare, Monomial, MonomialOrder, MAX_VARS};
pub use poly::{ArithOp, PolyRing, Polynomial, RingId};
pub use vector::{Term, TermOrder, Vector};
pub(crate) use vector::VecArith;

//! Sparse polynomials, monomial orders and free-module elements.

pub mod monomial;
pub mod order;
pub mod polynomial;
pub mod ring;
pub mod vector;

pub use monomial::Monomial;
pub use order::{MonoOrder, TermOrder};
pub use polynomial::{vector_initial_form, vector_valuation, Poly};
pub use ring::{Mode, Ring};
pub use vector::{Term, Vector};

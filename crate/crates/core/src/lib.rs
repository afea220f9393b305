pub mod companions;
pub mod corpus;
pub mod error;
pub mod hilbert;
pub mod invariants;
pub mod lift;
pub mod linalg;
pub mod linearity;
pub mod poly;
pub mod report;
pub mod resolution;
pub mod scalar;
pub mod stdbasis;
pub mod tangent;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};

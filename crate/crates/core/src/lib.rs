//! Discriminant distribution of polynomials over finite fields: field and
//! polynomial arithmetic, exhaustive censuses, and the supporting number
//! theory.

pub mod census;
pub mod cli;
pub mod field;
pub mod poly;
pub mod theory;

pub use census::{census, CensusMode, CensusTable};
pub use field::{make_field, field_of_order, FieldElement, FieldSpec};
pub use poly::{Factorization, Poly};
pub use theory::Partition;

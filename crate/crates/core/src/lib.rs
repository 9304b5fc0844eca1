//! Regular and p-regular orbits of finite linear and semilinear groups over finite fields.
//!
//! Finite fields come from Zech-logarithm tables ([`field`]); semilinear maps of `GF(q^n)`
//! and the norm-one subgroups that obstruct regular orbits live in [`semilinear`]; groups act
//! on indexed vector spaces through the backends in [`action`]; [`constructions`] builds the
//! explicit wreath products and central products; [`search`] samples random instances.

pub mod action;
pub mod arith;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod field;
pub mod groupspec;
pub mod linalg;
pub mod perm;
pub mod search;
pub mod semilinear;

pub use action::{ActionInstance, Caps, Instance, OrbitReport, ZhangReport};
pub use error::{Error, Result};
pub use field::{make_field, FieldContext, FieldElement, FieldParams};
pub use groupspec::GroupSpecFile;
pub use semilinear::{SemilinearGroup, SemilinearMap};

//! Characteristic data of finite-dimensional algebras with parametric
//! structure constants: determinant, trace, minimal polynomial and related
//! invariants, computed exactly over the rationals and over prime fields.

pub mod algebra;
pub mod engine;
pub mod error;
pub mod field;
pub mod format;
pub mod identity;
pub mod matrix;
pub mod mpoly;
pub mod ratfunc;
pub mod upoly;
pub mod vars;

pub use algebra::{Algebra, AnyAlgebra, Element, Frame};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use mpoly::MPoly;
pub use vars::{VarKind, VarTable};

pub type Rational = num_rational::BigRational;
pub type QPoly = MPoly<Rationals>;
pub type FpPoly = MPoly<PrimeField>;
pub type QAlgebra = Algebra<Rationals>;
pub type FpAlgebra = Algebra<PrimeField>;

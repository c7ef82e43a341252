//! Exact computations with finite-dimensional BiHom-Novikov algebras.
//!
//! Algebras are given by structure constants over the rationals or a small
//! prime field together with two structure maps. The crate decides class
//! membership with counterexamples, builds new algebras by the standard
//! twisting constructions, studies invariant bilinear forms, and computes the
//! degree-two deformation cohomology and truncated formal deformations.

pub mod algebra;
pub mod axioms;
pub mod cohomology;
pub mod constructions;
pub mod corpus;
pub mod deformation;
pub mod document;
pub mod error;
pub mod matrix;
pub mod quadratic;
pub mod report;
pub mod scalar;
pub mod search;
pub mod tensor;

pub use algebra::{BiHomAlgebra, Kind};
pub use document::AlgebraDocument;
pub use error::{Error, Result};
pub use matrix::{Matrix, Vector};
pub use report::{CheckReport, Failure};
pub use scalar::{Field, Scalar};
pub use tensor::{Tensor3, Tensor4};

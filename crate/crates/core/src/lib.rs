//! Exact truncated vertex operator algebras, their modules, the vertex
//! operator Yang-Baxter equation and relative Rota-Baxter operators.

pub mod error;
pub mod exact_algebra;
pub mod io;
pub mod lie_reduction;
pub mod module_theory;
pub mod report;
pub mod voa_core;
pub mod yang_baxter;

pub use error::{Error, Result};
pub use exact_algebra::{BasisKey, GradedVector, LevelwiseMatrix, Matrix, Rational, SpaceTag, Vector};
pub use report::{CheckReport, Component, Outcome, Witness};
pub use voa_core::{CurrentVOA, GradedSpace, LieAlgebraData, VertexAlgebra};

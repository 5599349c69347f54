//! Truncated current-algebra VOAs, their mode recursion, primed operators,
//! m-dot products and an axiom verifier.

mod axioms;
mod current;
mod fock;
mod lie;
mod ops;
mod pbw;
mod traits;

pub use axioms::verify_voa_axioms;
pub use current::CurrentVOA;
pub use fock::FockSpace;
pub use lie::LieAlgebraData;
pub use ops::{m_dot, mode_action, primed_mode, primed_op_mode, require_level, virasoro_mode, virasoro_power, weight, DotKind};
pub use pbw::{Factor, Monomial, PbwBasis};
pub use traits::{GradedSpace, VertexAlgebra};

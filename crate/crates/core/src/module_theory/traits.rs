use std::sync::Arc;

use crate::error::Result;
use crate::exact_algebra::{BasisKey, Rational, Vector};
use crate::voa_core::{GradedSpace, VertexAlgebra};

/// Admissible module over a truncated VOA. Levels are the admissible
/// degrees; `L(0)` acts on level `n` by `conformal_weight() + n` when the
/// module is ordinary.
pub trait VoaModule: GradedSpace {
    fn algebra(&self) -> &Arc<dyn VertexAlgebra>;
    /// `a_m u` for basis vectors `a` of the algebra and `u` of the module.
    fn act_basis(&self, a: BasisKey, m: i64, u: BasisKey) -> Result<Arc<Vector>>;
    fn conformal_weight(&self) -> Rational;
}

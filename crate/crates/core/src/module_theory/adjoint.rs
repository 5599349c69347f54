use std::sync::Arc;

use num_traits::Zero;

use super::traits::VoaModule;
use crate::error::Result;
use crate::exact_algebra::{BasisKey, Rational, SpaceTag, Vector};
use crate::voa_core::{GradedSpace, VertexAlgebra};

/// `V` as a module over itself.
pub struct AdjointModule {
    v: Arc<dyn VertexAlgebra>,
}

impl AdjointModule {
    pub fn new(v: Arc<dyn VertexAlgebra>) -> Self {
        AdjointModule { v }
    }
}

impl GradedSpace for AdjointModule {
    fn tag(&self) -> SpaceTag {
        self.v.tag()
    }

    fn max_degree(&self) -> usize {
        self.v.max_degree()
    }

    fn dim(&self, level: usize) -> usize {
        self.v.dim(level)
    }

    fn label(&self, key: BasisKey) -> String {
        self.v.label(key)
    }
}

impl VoaModule for AdjointModule {
    fn algebra(&self) -> &Arc<dyn VertexAlgebra> {
        &self.v
    }

    fn act_basis(&self, a: BasisKey, m: i64, u: BasisKey) -> Result<Arc<Vector>> {
        self.v.mode_basis(a, m, u)
    }

    fn conformal_weight(&self) -> Rational {
        Rational::zero()
    }
}

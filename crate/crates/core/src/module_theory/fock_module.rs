use std::sync::Arc;

use super::ops::module_virasoro;
use super::traits::VoaModule;
use crate::error::{Error, Result};
use crate::exact_algebra::{format_rational, BasisKey, Rational, SpaceTag, Vector};
use crate::voa_core::{CurrentVOA, FockSpace, GradedSpace, VertexAlgebra};

/// Heisenberg Fock module `M(1, λ)`: top vector `e^λ` with `α(0) e^λ = λ e^λ`.
pub struct FockModule {
    parent: Arc<CurrentVOA>,
    algebra: Arc<dyn VertexAlgebra>,
    space: FockSpace,
    lambda: Rational,
    weight: Rational,
}

impl FockModule {
    pub fn new(parent: Arc<CurrentVOA>, lambda: Rational) -> Result<Self> {
        if parent.lie().dim() != 1 || !parent.lie().is_abelian() {
            return Err(Error::Precondition("Fock modules need the rank-one Heisenberg algebra".into()));
        }
        let space = FockSpace::new(
            parent.space().lie().clone(),
            parent.level().clone(),
            vec![lambda.clone()],
            parent.max_degree(),
        )?;
        let algebra: Arc<dyn VertexAlgebra> = parent.clone();
        let mut m = FockModule { parent, algebra, space, lambda, weight: Rational::from_integer(0.into()) };
        // L(0) on the top vector fixes the conformal weight.
        let top = Vector::basis(m.space.top_key());
        let l0 = module_virasoro(&m, 0, &top)?;
        m.weight = l0.get(&m.space.top_key());
        Ok(m)
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn parent(&self) -> &Arc<CurrentVOA> {
        &self.parent
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }
}

impl GradedSpace for FockModule {
    fn tag(&self) -> SpaceTag {
        SpaceTag::new(format!("M(1,{})", format_rational(&self.lambda)))
    }

    fn max_degree(&self) -> usize {
        self.space.max_degree()
    }

    fn dim(&self, level: usize) -> usize {
        self.space.dim(level)
    }

    fn label(&self, key: BasisKey) -> String {
        self.space.label(key)
    }
}

impl VoaModule for FockModule {
    fn algebra(&self) -> &Arc<dyn VertexAlgebra> {
        &self.algebra
    }

    fn act_basis(&self, a: BasisKey, m: i64, u: BasisKey) -> Result<Arc<Vector>> {
        self.space.mode(self.parent.space().basis(), a, m, u)
    }

    fn conformal_weight(&self) -> Rational {
        self.weight.clone()
    }
}

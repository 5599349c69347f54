use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::ops::{integer_weight, module_primed_action};
use super::traits::VoaModule;
use crate::error::Result;
use crate::exact_algebra::{BasisKey, Rational, SpaceTag, Vector};
use crate::voa_core::{GradedSpace, VertexAlgebra};

type ActKey = (BasisKey, i64, BasisKey);

/// Graded dual `W' = ⊕ W(n)*` in the coordinate dual bases, with
/// `<a_n f, u> = <f, a'_n u>`.
pub struct ContragredientModule {
    source: Arc<dyn VoaModule>,
    cache: RwLock<HashMap<ActKey, Arc<Vector>>>,
    primed: RwLock<HashMap<ActKey, Arc<Vector>>>,
}

impl ContragredientModule {
    /// Requires an integer `L(0)` spectrum on the source.
    pub fn new(source: Arc<dyn VoaModule>) -> Result<Self> {
        integer_weight(source.as_ref(), "the contragredient module")?;
        Ok(ContragredientModule { source, cache: RwLock::new(HashMap::new()), primed: RwLock::new(HashMap::new()) })
    }

    pub fn source(&self) -> &Arc<dyn VoaModule> {
        &self.source
    }

    fn act_uncached(&self, a: BasisKey, m: i64, f: BasisKey) -> Result<Vector> {
        let target = a.level as i64 - m - 1 + f.level as i64;
        let Some(level) = self.window(target)? else { return Ok(Vector::zero()) };
        let mut out = Vector::zero();
        for u in self.source.basis_keys(level) {
            out.add_term(u, self.primed_image(a, m, u)?.get(&f));
        }
        Ok(out)
    }

    /// `a'_m u` in the source module.
    fn primed_image(&self, a: BasisKey, m: i64, u: BasisKey) -> Result<Arc<Vector>> {
        let key = (a, m, u);
        if let Some(v) = self.primed.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let image = module_primed_action(self.source.as_ref(), &Vector::basis(a), m, &Vector::basis(u))?;
        let v = Arc::new(image);
        self.primed.write().expect("cache lock").entry(key).or_insert_with(|| v.clone());
        Ok(v)
    }
}

impl GradedSpace for ContragredientModule {
    fn tag(&self) -> SpaceTag {
        self.source.tag().dual()
    }

    fn max_degree(&self) -> usize {
        self.source.max_degree()
    }

    fn dim(&self, level: usize) -> usize {
        self.source.dim(level)
    }

    fn label(&self, key: BasisKey) -> String {
        format!("({})*", self.source.label(key))
    }
}

impl VoaModule for ContragredientModule {
    fn algebra(&self) -> &Arc<dyn VertexAlgebra> {
        self.source.algebra()
    }

    fn act_basis(&self, a: BasisKey, m: i64, f: BasisKey) -> Result<Arc<Vector>> {
        let key = (a, m, f);
        if let Some(v) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.act_uncached(a, m, f)?);
        self.cache.write().expect("cache lock").entry(key).or_insert_with(|| v.clone());
        Ok(v)
    }

    fn conformal_weight(&self) -> Rational {
        self.source.conformal_weight()
    }
}

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::ops::{integer_weight, module_virasoro_power};
use super::traits::VoaModule;
use crate::error::{Error, Result};
use crate::exact_algebra::{factorial_inv, sign, BasisKey, Rational, SpaceTag, Vector};
use crate::voa_core::{GradedSpace, VertexAlgebra};

type ModeKey = (BasisKey, i64, BasisKey);

/// Semidirect product `V ⋊ M` for a module `M` of conformal weight 0, with
/// `M` a square-zero ideal. Level `n` has the basis of `V_n` followed by the
/// basis of `M(n)`.
pub struct SemidirectVOA {
    v: Arc<dyn VertexAlgebra>,
    m: Arc<dyn VoaModule>,
    tag: SpaceTag,
    cache: RwLock<HashMap<ModeKey, Arc<Vector>>>,
}

impl SemidirectVOA {
    pub fn new(v: Arc<dyn VertexAlgebra>, m: Arc<dyn VoaModule>) -> Result<Self> {
        if integer_weight(m.as_ref(), "the semidirect product")? != 0 {
            return Err(Error::Precondition("the semidirect product needs a module of conformal weight 0".into()));
        }
        if !std::ptr::addr_eq(Arc::as_ptr(m.algebra()), Arc::as_ptr(&v)) || m.max_degree() != v.max_degree() {
            return Err(Error::SpaceMismatch { expected: v.tag().0, found: m.algebra().tag().0 });
        }
        let tag = SpaceTag::new(format!("{}⋊{}", v.tag(), m.tag()));
        Ok(SemidirectVOA { v, m, tag, cache: RwLock::new(HashMap::new()) })
    }

    pub fn base(&self) -> &Arc<dyn VertexAlgebra> {
        &self.v
    }

    pub fn ideal(&self) -> &Arc<dyn VoaModule> {
        &self.m
    }

    /// Whether `key` lies in the `V` summand.
    pub fn in_base(&self, key: BasisKey) -> bool {
        key.index < self.v.dim(key.level)
    }

    pub fn embed_ideal_key(&self, key: BasisKey) -> BasisKey {
        BasisKey::new(key.level, key.index + self.v.dim(key.level))
    }

    pub fn embed_base(&self, x: &Vector) -> Vector {
        x.clone()
    }

    pub fn embed_ideal(&self, x: &Vector) -> Vector {
        Vector::from_terms(x.iter().map(|(k, c)| (self.embed_ideal_key(*k), c.clone())))
    }

    /// Splits a vector of `U` into its `V` and `M` parts.
    pub fn split(&self, x: &Vector) -> (Vector, Vector) {
        let mut base = Vector::zero();
        let mut ideal = Vector::zero();
        for (k, c) in x.iter() {
            if self.in_base(*k) {
                base.add_term(*k, c.clone());
            } else {
                ideal.add_term(BasisKey::new(k.level, k.index - self.v.dim(k.level)), c.clone());
            }
        }
        (base, ideal)
    }

    fn ideal_key(&self, key: BasisKey) -> BasisKey {
        BasisKey::new(key.level, key.index - self.v.dim(key.level))
    }

    fn mode_uncached(&self, a: BasisKey, k: i64, b: BasisKey) -> Result<Vector> {
        match (self.in_base(a), self.in_base(b)) {
            (true, true) => Ok((*self.v.mode_basis(a, k, b)?).clone()),
            (true, false) => Ok(self.embed_ideal(&*self.m.act_basis(a, k, self.ideal_key(b))?)),
            (false, true) => {
                // f_k b = Σ_j (-1)^{k+j+1}/j! L(-1)^j (b_{k+j} f)
                let f = self.ideal_key(a);
                let top = a.level as i64 + b.level as i64 - k - 1;
                let mut out = Vector::zero();
                for j in 0..=top.max(-1) {
                    let inner = self.m.act_basis(b, k + j, f)?;
                    if inner.is_zero() {
                        continue;
                    }
                    let term = module_virasoro_power(self.m.as_ref(), -1, j as usize, &inner)?;
                    out.add_scaled(&term, &(sign(k + j + 1) * factorial_inv(j as usize)));
                }
                Ok(self.embed_ideal(&out))
            }
            (false, false) => Ok(Vector::zero()),
        }
    }
}

impl GradedSpace for SemidirectVOA {
    fn tag(&self) -> SpaceTag {
        self.tag.clone()
    }

    fn max_degree(&self) -> usize {
        self.v.max_degree()
    }

    fn dim(&self, level: usize) -> usize {
        self.v.dim(level) + self.m.dim(level)
    }

    fn label(&self, key: BasisKey) -> String {
        if self.in_base(key) {
            self.v.label(key)
        } else {
            self.m.label(self.ideal_key(key))
        }
    }
}

impl VertexAlgebra for SemidirectVOA {
    fn mode_basis(&self, a: BasisKey, k: i64, b: BasisKey) -> Result<Arc<Vector>> {
        if self.window(a.level as i64 + b.level as i64 - k - 1)?.is_none() {
            return Ok(Arc::new(Vector::zero()));
        }
        let key = (a, k, b);
        if let Some(v) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.mode_uncached(a, k, b)?);
        self.cache.write().expect("cache lock").entry(key).or_insert_with(|| v.clone());
        Ok(v)
    }

    fn vacuum(&self) -> BasisKey {
        self.v.vacuum()
    }

    fn conformal_vector(&self) -> &Vector {
        self.v.conformal_vector()
    }

    fn central_charge(&self) -> &Rational {
        self.v.central_charge()
    }
}

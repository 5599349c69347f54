use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::adjoint::AdjointModule;
use super::contragredient::ContragredientModule;
use super::ops::{integer_weight, module_virasoro_power, skew_mode_action};
use super::traits::VoaModule;
use crate::error::{Error, Result};
use crate::exact_algebra::{factorial_inv, sign, BasisKey, Vector};
use crate::voa_core::GradedSpace;

type Key = (BasisKey, i64, BasisKey);

/// The intertwining operators `W × W' → V'` and `W' × W → V'` for a module
/// `W` of conformal weight 0, together with `W'` and `V'`.
pub struct Intertwiners {
    w: Arc<dyn VoaModule>,
    wp: Arc<ContragredientModule>,
    vp: Arc<ContragredientModule>,
    cache: RwLock<HashMap<Key, Arc<Vector>>>,
}

impl Intertwiners {
    pub fn new(w: Arc<dyn VoaModule>) -> Result<Self> {
        if integer_weight(w.as_ref(), "the intertwining operators")? != 0 {
            return Err(Error::Precondition("intertwining operators need conformal weight 0".into()));
        }
        let wp = Arc::new(ContragredientModule::new(w.clone())?);
        let adjoint: Arc<dyn VoaModule> = Arc::new(AdjointModule::new(w.algebra().clone()));
        let vp = Arc::new(ContragredientModule::new(adjoint)?);
        Ok(Intertwiners { w, wp, vp, cache: RwLock::new(HashMap::new()) })
    }

    pub fn module(&self) -> &Arc<dyn VoaModule> {
        &self.w
    }

    pub fn contragredient(&self) -> &Arc<ContragredientModule> {
        &self.wp
    }

    pub fn coadjoint(&self) -> &Arc<ContragredientModule> {
        &self.vp
    }

    /// `u[m] f ∈ V'` with `<u[m] f, a> = Σ_j (-1)^{wt u}/j! <f, (L(1)^j u)(2 wt u - j - m - 2) a>`.
    pub fn wwp(&self, u: &Vector, m: i64, f: &Vector) -> Result<Vector> {
        let mut out = Vector::zero();
        for (ku, cu) in u.iter() {
            for (kf, cf) in f.iter() {
                out.add_scaled(&*self.wwp_basis(*ku, m, *kf)?, &(cu * cf));
            }
        }
        Ok(out)
    }

    fn wwp_basis(&self, u: BasisKey, m: i64, f: BasisKey) -> Result<Arc<Vector>> {
        let key = (u, m, f);
        if let Some(v) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.wwp_uncached(u, m, f)?);
        self.cache.write().expect("cache lock").entry(key).or_insert_with(|| v.clone());
        Ok(v)
    }

    fn wwp_uncached(&self, u: BasisKey, m: i64, f: BasisKey) -> Result<Vector> {
        let target = u.level as i64 + f.level as i64 - m - 1;
        let Some(level) = self.vp.window(target)? else { return Ok(Vector::zero()) };
        let wt = u.level as i64;
        let mut lifts = Vec::new();
        let mut lj = Vector::basis(u);
        for j in 0..=wt {
            if lj.is_zero() {
                break;
            }
            lifts.push((j, lj.clone()));
            lj = module_virasoro_power(self.w.as_ref(), 1, 1, &lj)?;
        }
        let mut out = Vector::zero();
        for a in self.vp.basis_keys(level) {
            let av = Vector::basis(a);
            let mut value = crate::exact_algebra::Rational::from_integer(0.into());
            for (j, lu) in &lifts {
                let image = skew_mode_action(self.w.as_ref(), lu, 2 * wt - j - m - 2, &av)?;
                value += sign(wt) * factorial_inv(*j as usize) * image.get(&f);
            }
            out.add_term(a, value);
        }
        Ok(out)
    }

    /// `f{m} u = Σ_k (-1)^{m+k+1}/k! L(-1)^k (u[m+k] f)` in `V'`.
    pub fn wpw(&self, f: &Vector, m: i64, u: &Vector) -> Result<Vector> {
        let mut out = Vector::zero();
        for (ku, cu) in u.iter() {
            for (kf, cf) in f.iter() {
                let top = ku.level as i64 + kf.level as i64 - m - 1;
                for k in 0..=top.max(-1) {
                    let inner = self.wwp_basis(*ku, m + k, *kf)?;
                    if inner.is_zero() {
                        continue;
                    }
                    let term = module_virasoro_power(self.vp.as_ref(), -1, k as usize, &inner)?;
                    out.add_scaled(&term, &(sign(m + k + 1) * factorial_inv(k as usize) * cu * cf));
                }
            }
        }
        Ok(out)
    }
}

use std::sync::Arc;

use num_traits::Zero;

use super::fock::FockSpace;
use super::lie::LieAlgebraData;
use super::traits::{GradedSpace, VertexAlgebra};
use crate::error::{Error, Result};
use crate::exact_algebra::{q, BasisKey, Rational, SpaceTag, Vector};

/// Universal current-algebra VOA `V^k(g)` truncated at degree `N`, with the
/// Sugawara conformal vector.
#[derive(Debug)]
pub struct CurrentVOA {
    space: FockSpace,
    omega: Vector,
    central_charge: Rational,
    tag: SpaceTag,
}

impl CurrentVOA {
    pub fn new(lie: LieAlgebraData, level: Rational, max_degree: usize) -> Result<Self> {
        Self::with_tag(lie, level, max_degree, SpaceTag::new("V"))
    }

    pub fn with_tag(lie: LieAlgebraData, level: Rational, max_degree: usize, tag: SpaceTag) -> Result<Self> {
        let shifted = &level + lie.h_dual();
        if shifted.is_zero() {
            return Err(Error::CriticalLevel);
        }
        if max_degree < 2 {
            return Err(Error::Precondition("the conformal vector needs max_degree >= 2".into()));
        }
        let dim = lie.dim();
        let central_charge = &level * q(dim as i64) / &shifted;
        let space = FockSpace::new(Arc::new(lie), level, vec![Rational::zero(); dim], max_degree)?;
        let lie = space.lie().clone();
        let mut omega = Vector::zero();
        let vac = space.top_key();
        for i in 0..dim {
            for j in 0..dim {
                let kij = lie.form_inverse().get(i, j);
                if kij.is_zero() {
                    continue;
                }
                let xj = space.gen_action(j, -1, vac)?;
                omega.add_scaled(&space.gen_action_vec(i, -1, &xj)?, kij);
            }
        }
        let omega = omega.scaled(&(Rational::from_integer(1.into()) / (q(2) * &shifted)));
        Ok(CurrentVOA { space, omega, central_charge, tag })
    }

    /// Rank-`r` Heisenberg VOA: abelian algebra, identity form, level 1.
    pub fn heisenberg(rank: usize, max_degree: usize) -> Result<Self> {
        Self::new(LieAlgebraData::abelian(rank), q(1), max_degree)
    }

    pub fn lie(&self) -> &LieAlgebraData {
        self.space.lie()
    }

    pub fn level(&self) -> &Rational {
        self.space.level()
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    /// `x(-1)𝟙` for the generator `x`.
    pub fn generator(&self, x: usize) -> BasisKey {
        BasisKey::new(1, x)
    }

    /// Vector for a product of creation factors applied to the vacuum, in
    /// any order; the result is normal ordered via the commutation rules.
    pub fn monomial_vector(&self, factors: &[(usize, i64)]) -> Result<Vector> {
        let mut v = Vector::basis(self.space.top_key());
        for &(g, m) in factors.iter().rev() {
            if g >= self.lie().dim() {
                return Err(Error::Shape(format!("generator {g} out of range")));
            }
            v = self.space.gen_action_vec(g, m, &v)?;
        }
        Ok(v)
    }
}

impl GradedSpace for CurrentVOA {
    fn tag(&self) -> SpaceTag {
        self.tag.clone()
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

impl VertexAlgebra for CurrentVOA {
    fn mode_basis(&self, a: BasisKey, m: i64, b: BasisKey) -> Result<Arc<Vector>> {
        self.space.mode(self.space.basis(), a, m, b)
    }

    fn vacuum(&self) -> BasisKey {
        self.space.top_key()
    }

    fn conformal_vector(&self) -> &Vector {
        &self.omega
    }

    fn central_charge(&self) -> &Rational {
        &self.central_charge
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::qf;

    #[test]
    fn heisenberg_conformal_vector() {
        let v = CurrentVOA::heisenberg(1, 3).unwrap();
        assert_eq!(v.central_charge(), &q(1));
        let expected = v.monomial_vector(&[(0, -1), (0, -1)]).unwrap().scaled(&qf(1, 2));
        assert_eq!(v.conformal_vector(), &expected);
    }

    #[test]
    fn sl2_level_one_central_charge() {
        let v = CurrentVOA::new(LieAlgebraData::sl2(), q(1), 2).unwrap();
        assert_eq!(v.central_charge(), &q(1));
        assert_eq!((v.dim(1), v.dim(2)), (3, 9));
    }

    #[test]
    fn critical_level_is_rejected() {
        assert!(matches!(CurrentVOA::new(LieAlgebraData::sl2(), q(-2), 2), Err(Error::CriticalLevel)));
    }
}

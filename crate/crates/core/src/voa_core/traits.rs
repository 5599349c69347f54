use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact_algebra::{BasisKey, Rational, SpaceTag, Vector};

/// A space graded by levels `0..=N` with a cached basis per level.
pub trait GradedSpace: Send + Sync {
    fn tag(&self) -> SpaceTag;
    fn max_degree(&self) -> usize;
    fn dim(&self, level: usize) -> usize;
    fn label(&self, key: BasisKey) -> String;

    fn basis_keys(&self, level: usize) -> Vec<BasisKey> {
        (0..self.dim(level)).map(|i| BasisKey::new(level, i)).collect()
    }

    fn all_keys(&self) -> Vec<BasisKey> {
        (0..=self.max_degree()).flat_map(|n| self.basis_keys(n)).collect()
    }

    /// `None` for negative levels (the result is zero), an error above `N`.
    fn window(&self, level: i64) -> Result<Option<usize>> {
        if level < 0 {
            Ok(None)
        } else if level as usize > self.max_degree() {
            Err(Error::OutOfWindow { level, max: self.max_degree() })
        } else {
            Ok(Some(level as usize))
        }
    }

    fn describe(&self, v: &Vector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = v
            .iter()
            .map(|(k, c)| format!("{}*{}", crate::exact_algebra::format_rational(c), self.label(*k)))
            .collect();
        parts.join(" + ")
    }
}

/// A truncated vertex operator algebra of CFT type whose level equals the
/// `L(0)` weight.
pub trait VertexAlgebra: GradedSpace {
    /// `a_m b` on basis vectors.
    fn mode_basis(&self, a: BasisKey, m: i64, b: BasisKey) -> Result<Arc<Vector>>;
    fn vacuum(&self) -> BasisKey;
    fn conformal_vector(&self) -> &Vector;
    fn central_charge(&self) -> &Rational;
}

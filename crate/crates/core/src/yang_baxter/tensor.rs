use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_algebra::{BasisKey, Matrix, Rational, SpaceTag, Vector};

/// Element of `Π_t U(t) ⊗ U(t)` inside the window, stored per level as a
/// sparse coefficient table on basis index pairs. Zero entries are never
/// stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalTensor {
    carrier: SpaceTag,
    levels: BTreeMap<usize, BTreeMap<(usize, usize), Rational>>,
}

impl DiagonalTensor {
    pub fn zero(carrier: SpaceTag) -> Self {
        DiagonalTensor { carrier, levels: BTreeMap::new() }
    }

    pub fn carrier(&self) -> &SpaceTag {
        &self.carrier
    }

    pub fn add_entry(&mut self, level: usize, i: usize, j: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let table = self.levels.entry(level).or_default();
        let slot = table.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            table.remove(&(i, j));
            if table.is_empty() {
                self.levels.remove(&level);
            }
        }
    }

    /// Adds `c · left ⊗ right` for vectors homogeneous of one common level.
    pub fn add_pair(&mut self, left: &Vector, right: &Vector, c: &Rational) -> Result<()> {
        let (Some(l), Some(r)) = (left.homogeneous_level()?, right.homogeneous_level()?) else {
            return Ok(());
        };
        if l != r {
            return Err(Error::Precondition(format!("pair is not diagonal: levels {l} and {r}")));
        }
        for (a, ca) in left.iter() {
            for (b, cb) in right.iter() {
                self.add_entry(l, a.index, b.index, &(c * ca * cb));
            }
        }
        Ok(())
    }

    pub fn entry(&self, level: usize, i: usize, j: usize) -> Rational {
        self.levels.get(&level).and_then(|t| t.get(&(i, j))).cloned().unwrap_or_else(Rational::zero)
    }

    /// Levels carrying a nonzero entry.
    pub fn levels(&self) -> impl Iterator<Item = usize> + '_ {
        self.levels.keys().copied()
    }

    pub fn level_entries(&self, level: usize) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.levels.get(&level).into_iter().flat_map(|t| t.iter())
    }

    pub fn max_level(&self) -> Option<usize> {
        self.levels.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.levels.is_empty()
    }

    /// Dense coefficient matrix of level `t` with `dim` rows and columns.
    pub fn level_matrix(&self, level: usize, dim: usize) -> Result<Matrix> {
        let mut m = Matrix::zeros(dim, dim);
        for (&(i, j), c) in self.level_entries(level) {
            if i >= dim || j >= dim {
                return Err(Error::Shape(format!("entry ({i}, {j}) at level {level} exceeds dimension {dim}")));
            }
            m.set(i, j, c.clone());
        }
        Ok(m)
    }

    pub fn from_level_matrices(carrier: SpaceTag, blocks: impl IntoIterator<Item = (usize, Matrix)>) -> Self {
        let mut out = DiagonalTensor::zero(carrier);
        for (level, m) in blocks {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.add_entry(level, i, j, m.get(i, j));
                }
            }
        }
        out
    }

    /// The flip `σ(a ⊗ b) = b ⊗ a`.
    pub fn sigma(&self) -> DiagonalTensor {
        let mut out = DiagonalTensor::zero(self.carrier.clone());
        for (&level, table) in &self.levels {
            for (&(i, j), c) in table {
                out.add_entry(level, j, i, c);
            }
        }
        out
    }

    pub fn scaled(&self, c: &Rational) -> DiagonalTensor {
        let mut out = DiagonalTensor::zero(self.carrier.clone());
        for (&level, table) in &self.levels {
            for (&(i, j), x) in table {
                out.add_entry(level, i, j, &(x * c));
            }
        }
        out
    }

    pub fn plus(&self, other: &DiagonalTensor) -> DiagonalTensor {
        let mut out = self.clone();
        for (&level, table) in &other.levels {
            for (&(i, j), x) in table {
                out.add_entry(level, i, j, x);
            }
        }
        out
    }

    pub fn minus(&self, other: &DiagonalTensor) -> DiagonalTensor {
        self.plus(&other.scaled(&-Rational::from_integer(1.into())))
    }

    /// `γ - σ(γ)`.
    pub fn skewsymmetrize(&self) -> DiagonalTensor {
        self.minus(&self.sigma())
    }

    /// Errors with the lowest offending level unless `σ(r) = -r`.
    pub fn require_skew(&self) -> Result<()> {
        for (&level, table) in &self.levels {
            for (&(i, j), c) in table {
                if self.entry(level, j, i) != -c {
                    return Err(Error::NotSkewSymmetric(level));
                }
            }
        }
        Ok(())
    }

    pub fn is_skew(&self) -> bool {
        self.require_skew().is_ok()
    }

    /// Restriction to the levels `0..=max`.
    pub fn truncated(&self, max: usize) -> DiagonalTensor {
        DiagonalTensor {
            carrier: self.carrier.clone(),
            levels: self.levels.range(..=max).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// The stored basis pairs `(left, right, coeff)` in canonical order.
    pub fn pairs(&self) -> Vec<(BasisKey, BasisKey, Rational)> {
        self.levels
            .iter()
            .flat_map(|(&level, table)| {
                table.iter().map(move |(&(i, j), c)| (BasisKey::new(level, i), BasisKey::new(level, j), c.clone()))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::q;

    fn tag() -> SpaceTag {
        SpaceTag::new("U")
    }

    #[test]
    fn skewsymmetrize_single_pair() {
        let mut g = DiagonalTensor::zero(tag());
        g.add_pair(&Vector::basis(BasisKey::new(2, 0)), &Vector::basis(BasisKey::new(2, 1)), &q(1)).unwrap();
        let r = g.skewsymmetrize();
        assert_eq!(r.entry(2, 0, 1), q(1));
        assert_eq!(r.entry(2, 1, 0), q(-1));
        assert!(r.is_skew());
        assert_eq!(r.sigma(), r.scaled(&q(-1)));
    }

    #[test]
    fn symmetric_tensor_skewsymmetrizes_to_zero() {
        let mut g = DiagonalTensor::zero(tag());
        let a = Vector::from_terms([(BasisKey::new(1, 0), q(2)), (BasisKey::new(1, 1), q(-3))]);
        g.add_pair(&a, &a, &q(1)).unwrap();
        assert!(!g.is_skew());
        assert!(g.skewsymmetrize().is_zero());
        assert!(matches!(g.require_skew(), Err(Error::NotSkewSymmetric(1))));
    }

    #[test]
    fn non_diagonal_pair_is_rejected() {
        let mut g = DiagonalTensor::zero(tag());
        let r = g.add_pair(&Vector::basis(BasisKey::new(1, 0)), &Vector::basis(BasisKey::new(2, 0)), &q(1));
        assert!(r.is_err());
    }
}

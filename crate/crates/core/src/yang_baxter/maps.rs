use crate::error::{Error, Result};
use crate::exact_algebra::{qf, LevelwiseMatrix, SpaceTag, Vector};

use super::tensor::DiagonalTensor;

/// Homogeneous linear map between graded spaces, stored as blocks from
/// source level `n` to target level `n + d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPreservingMap {
    pub source: SpaceTag,
    pub target: SpaceTag,
    pub matrix: LevelwiseMatrix,
}

impl LevelPreservingMap {
    pub fn new(source: SpaceTag, target: SpaceTag, matrix: LevelwiseMatrix) -> Self {
        LevelPreservingMap { source, target, matrix: matrix.canonical() }
    }

    pub fn degree_shift(&self) -> i64 {
        self.matrix.shift()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.matrix.apply(v)
    }

    /// `T v`, or `OutOfWindow` when a term of `v` would land above `max`.
    pub fn apply_windowed(&self, v: &Vector, max: usize) -> Result<Vector> {
        for level in v.levels() {
            let target = level as i64 + self.degree_shift();
            if target > max as i64 {
                return Err(Error::OutOfWindow { level: target, max });
            }
        }
        Ok(self.matrix.apply(v))
    }

    /// Errors with the offending level unless `<T f, g> = -<f, T g>`.
    pub fn require_skew(&self) -> Result<()> {
        if self.degree_shift() != 0 {
            return Err(Error::Precondition("skewsymmetry needs a level-preserving map".into()));
        }
        for (&level, block) in self.matrix.blocks() {
            if block.rows() != block.cols() {
                return Err(Error::Shape(format!("non-square block at level {level}")));
            }
            if block.plus(&block.transpose())?.is_zero() {
                continue;
            }
            return Err(Error::NotSkewSymmetric(level));
        }
        Ok(())
    }

    /// The transposed map `T*: target' → source'`, `<T* f, u> = <f, T u>`.
    pub fn coadjoint(&self) -> LevelPreservingMap {
        let mut m = LevelwiseMatrix::new(-self.degree_shift());
        for (&level, block) in self.matrix.blocks() {
            if let Some(t) = self.matrix.target_level(level) {
                m.set_block(t, block.transpose());
            }
        }
        LevelPreservingMap::new(self.target.dual(), self.source.dual(), m)
    }
}

/// `Φ(r) = T_r: U' → U`, `T_r(f) = Σ α <f, β> - β <f, α>` for
/// `r = Σ α ⊗ β - β ⊗ α`. In coordinates the block of level `t` is the
/// coefficient matrix of `r^t`.
pub fn tensor_to_map(r: &DiagonalTensor, dim: impl Fn(usize) -> usize) -> Result<LevelPreservingMap> {
    r.require_skew()?;
    let mut m = LevelwiseMatrix::new(0);
    for level in r.levels() {
        m.set_block(level, r.level_matrix(level, dim(level))?);
    }
    Ok(LevelPreservingMap::new(r.carrier().dual(), r.carrier().clone(), m))
}

/// `Ψ(T) = ½ Σ_t Σ_i T(v_i*) ⊗ v_i - v_i ⊗ T(v_i*)` for skewsymmetric `T`.
pub fn map_to_tensor(t: &LevelPreservingMap) -> Result<DiagonalTensor> {
    t.require_skew()?;
    let half = qf(1, 2);
    let mut r = DiagonalTensor::zero(t.target.clone());
    for (&level, block) in t.matrix.blocks() {
        for i in 0..block.rows() {
            for l in 0..block.cols() {
                let c = &half * block.get(i, l);
                r.add_entry(level, i, l, &c);
                r.add_entry(level, l, i, &-c);
            }
        }
    }
    Ok(r)
}

//! Benchmark fixtures for the exact kernels.

use std::sync::Arc;

use vybe_core::exact_algebra::{q, qf, LevelwiseMatrix, Matrix, Rational};
use vybe_core::module_theory::{AdjointModule, VoaModule};
use vybe_core::voa_core::{CurrentVOA, GradedSpace, LieAlgebraData, VertexAlgebra};
use vybe_core::yang_baxter::{DiagonalTensor, LevelPreservingMap};

pub fn heisenberg(n: usize) -> Arc<CurrentVOA> {
    Arc::new(CurrentVOA::heisenberg(1, n).expect("heisenberg"))
}

pub fn sl2_level_one(n: usize) -> Arc<CurrentVOA> {
    Arc::new(CurrentVOA::new(LieAlgebraData::sl2(), q(1), n).expect("sl2"))
}

pub fn adjoint(v: &Arc<CurrentVOA>) -> Arc<dyn VoaModule> {
    let dynv: Arc<dyn VertexAlgebra> = v.clone();
    Arc::new(AdjointModule::new(dynv))
}

/// Deterministic dense skewsymmetric tensor on levels `1..=top`.
pub fn dense_skew(v: &CurrentVOA, top: usize) -> DiagonalTensor {
    let mut r = DiagonalTensor::zero(v.tag());
    for level in 1..=top {
        let d = v.dim(level);
        for i in 0..d {
            for j in i + 1..d {
                let c: Rational = q(((3 * i + 5 * j + level) % 7) as i64 - 3);
                r.add_entry(level, i, j, &c);
                r.add_entry(level, j, i, &-c);
            }
        }
    }
    r
}

/// The Heisenberg map `T(𝟙) = μ𝟙`, `T(α(-1)𝟙) = P α(-1)𝟙`.
pub fn scalar_extension(v: &CurrentVOA) -> LevelPreservingMap {
    let mut m = LevelwiseMatrix::new(0);
    m.set_block(0, Matrix::from_rows(vec![vec![qf(3, 2)]]).expect("block"));
    m.set_block(1, Matrix::from_rows(vec![vec![q(-2)]]).expect("block"));
    LevelPreservingMap::new(v.tag(), v.tag(), m)
}

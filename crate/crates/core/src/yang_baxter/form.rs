use std::sync::Arc;

use super::maps::{tensor_to_map, LevelPreservingMap};
use super::tensor::DiagonalTensor;
use crate::error::{Error, Result};
use crate::exact_algebra::{BasisKey, LevelwiseMatrix, Matrix, Vector};
use crate::module_theory::{AdjointModule, ContragredientModule, VoaModule};
use crate::report::{CheckReport, Component, Outcome, Witness};
use crate::voa_core::{GradedSpace, VertexAlgebra};

/// Invariant bilinear form `(a|b) = <φ(a), b>` where `φ: U → U'` is the
/// module map with `φ(1) = 1*`, i.e. `φ(a) = a_{-1} 1*`.
pub struct InvariantForm {
    grams: Vec<Matrix>,
}

impl InvariantForm {
    /// Builds the form and checks symmetry, nondegeneracy and invariance on
    /// the window.
    pub fn from_vacuum_dual(u: Arc<dyn VertexAlgebra>) -> Result<Self> {
        let coadjoint = ContragredientModule::new(Arc::new(AdjointModule::new(u.clone())))?;
        let vac = u.vacuum();
        let mut grams = Vec::new();
        for level in 0..=u.max_degree() {
            let dim = u.dim(level);
            let mut g = Matrix::zeros(dim, dim);
            for i in 0..dim {
                let phi = coadjoint.act_basis(BasisKey::new(level, i), -1, vac)?;
                for (k, c) in phi.iter() {
                    g.set(i, k.index, c.clone());
                }
            }
            if g != g.transpose() {
                return Err(Error::Precondition(format!("form is not symmetric at level {level}")));
            }
            if g.rank() < dim {
                return Err(Error::DegenerateForm(format!("Gram matrix at level {level} has rank {} < {dim}", g.rank())));
            }
            grams.push(g);
        }
        let form = InvariantForm { grams };
        let report = form.verify_invariance(u.as_ref(), &coadjoint)?;
        if !report.passed() {
            let w = report.components.iter().find_map(|c| c.witness.clone());
            return Err(Error::Precondition(format!(
                "form is not invariant{}",
                w.map(|w| format!(" at {}", w.instance)).unwrap_or_default()
            )));
        }
        Ok(form)
    }

    pub fn gram(&self, level: usize) -> &Matrix {
        &self.grams[level]
    }

    /// `φ(a)` as a coordinate functional.
    pub fn phi(&self, a: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (k, c) in a.iter() {
            let g = &self.grams[k.level];
            for j in 0..g.cols() {
                out.add_term(BasisKey::new(k.level, j), c * g.get(k.index, j));
            }
        }
        out
    }

    /// `φ(a_n b) = a_n φ(b)` on every basis pair and mode landing in the window.
    fn verify_invariance(&self, u: &dyn VertexAlgebra, coadjoint: &ContragredientModule) -> Result<CheckReport> {
        let keys = u.all_keys();
        let n_max = u.max_degree() as i64;
        let mut items = Vec::new();
        for &a in &keys {
            for &b in &keys {
                let top = (a.level + b.level) as i64;
                for n in top - 1 - n_max..=top - 1 {
                    items.push((a, n, b));
                }
            }
        }
        let mut report = CheckReport::new("invariance of the bilinear form");
        report.push(Component::evaluate("invariance", &items, |&(a, n, b)| {
            let lhs = self.phi(&*u.mode_basis(a, n, b)?);
            let rhs = crate::module_theory::module_mode_action(coadjoint, &Vector::basis(a), n, &self.phi(&Vector::basis(b)))?;
            Ok(if lhs == rhs {
                Outcome::Pass
            } else {
                Outcome::Fail(Witness {
                    instance: format!("phi({}_({n}) {})", u.label(a), u.label(b)),
                    lhs: coadjoint.describe(&lhs),
                    rhs: coadjoint.describe(&rhs),
                })
            })
        })?);
        Ok(report)
    }
}

/// `T̃_r = T_r ∘ φ: U → U`, so `T̃_r(a) = Σ α (a|β) - β (a|α)`.
pub fn form_transport(u: &dyn VertexAlgebra, r: &DiagonalTensor, form: &InvariantForm) -> Result<LevelPreservingMap> {
    let t = tensor_to_map(r, |n| u.dim(n))?;
    let mut m = LevelwiseMatrix::new(0);
    for (&level, block) in t.matrix.blocks() {
        if level >= form.grams.len() {
            return Err(Error::OutOfWindow { level: level as i64, max: u.max_degree() });
        }
        m.set_block(level, block.mul(form.gram(level))?);
    }
    Ok(LevelPreservingMap::new(u.tag(), u.tag(), m))
}

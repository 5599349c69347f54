use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{q, Matrix, Rational};

/// Finite-dimensional Lie algebra with a symmetric invariant form.
///
/// `structure[i][j]` lists the nonzero `(k, c_ij^k)` of `[x_i, x_j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraData {
    dim: usize,
    structure: Vec<Vec<Vec<(usize, Rational)>>>,
    form: Matrix,
    form_inverse: Matrix,
    h_dual: Rational,
    names: Vec<String>,
}

impl LieAlgebraData {
    /// Validates antisymmetry, the Jacobi identity, symmetry, invariance and
    /// nondegeneracy of the form, and derives the dual Coxeter number from
    /// the Casimir on the adjoint representation. A supplied `h_dual` must
    /// agree with that value.
    pub fn new(
        dim: usize,
        brackets: &[(usize, usize, usize, Rational)],
        form: Matrix,
        h_dual: Option<Rational>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidLie("dimension must be positive".into()));
        }
        if form.rows() != dim || form.cols() != dim {
            return Err(Error::InvalidLie(format!("form must be {dim}x{dim}")));
        }
        let mut dense = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        let mut given = vec![vec![false; dim]; dim];
        for (i, j, k, c) in brackets {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::InvalidLie(format!("bracket index out of range: [{i},{j}] -> {k}")));
            }
            if i == j && !c.is_zero() {
                return Err(Error::InvalidLie(format!("[x{i}, x{i}] must vanish")));
            }
            dense[*i][*j][*k] += c;
            given[*i][*j] = true;
        }
        // A pair listed in one order only is completed by antisymmetry.
        for i in 0..dim {
            for j in i + 1..dim {
                match (given[i][j], given[j][i]) {
                    (true, false) => dense[j][i] = dense[i][j].iter().map(|c| -c.clone()).collect(),
                    (false, true) => dense[i][j] = dense[j][i].iter().map(|c| -c.clone()).collect(),
                    _ => {}
                }
                for k in 0..dim {
                    if dense[i][j][k] != -dense[j][i][k].clone() {
                        return Err(Error::InvalidLie(format!("antisymmetry fails for c_({i},{j})^{k}")));
                    }
                }
            }
        }
        let structure: Vec<Vec<Vec<(usize, Rational)>>> = dense
            .iter()
            .map(|row| {
                row.iter()
                    .map(|col| {
                        col.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
                    })
                    .collect()
            })
            .collect();
        let names = match names {
            Some(n) if n.len() == dim => n,
            Some(_) => return Err(Error::InvalidLie("one generator name per basis element".into())),
            None if dim == 1 => vec!["a".to_string()],
            None => (0..dim).map(|i| format!("x{i}")).collect(),
        };
        let mut lie = LieAlgebraData {
            dim,
            structure,
            form_inverse: Matrix::zeros(dim, dim),
            form,
            h_dual: Rational::zero(),
            names,
        };
        lie.check_jacobi()?;
        lie.check_form()?;
        lie.form_inverse = lie
            .form
            .inverse()
            .ok_or_else(|| Error::DegenerateForm("invariant form of the Lie algebra is singular".into()))?;
        let derived = lie.casimir_h_dual()?;
        if let Some(h) = h_dual {
            if h != derived {
                return Err(Error::InvalidLie(format!(
                    "h_dual {} disagrees with the Casimir of the given form ({})",
                    crate::exact_algebra::format_rational(&h),
                    crate::exact_algebra::format_rational(&derived)
                )));
            }
        }
        lie.h_dual = derived;
        Ok(lie)
    }

    /// Abelian algebra of the given rank with the identity form.
    pub fn abelian(rank: usize) -> Self {
        LieAlgebraData::new(rank, &[], Matrix::identity(rank), None, None).expect("identity form is valid")
    }

    /// sl2 in the basis (e, h, f) with (e|f) = 1, (h|h) = 2.
    pub fn sl2() -> Self {
        let brackets = [
            (1, 0, 0, q(2)),
            (0, 1, 0, q(-2)),
            (1, 2, 2, q(-2)),
            (2, 1, 2, q(2)),
            (0, 2, 1, q(1)),
            (2, 0, 1, q(-1)),
        ];
        let form = Matrix::from_rows(vec![
            vec![q(0), q(0), q(1)],
            vec![q(0), q(2), q(0)],
            vec![q(1), q(0), q(0)],
        ])
        .expect("square");
        LieAlgebraData::new(3, &brackets, form, Some(q(2)), Some(vec!["e".into(), "h".into(), "f".into()]))
            .expect("sl2 data is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.structure[i][j]
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn form_inverse(&self) -> &Matrix {
        &self.form_inverse
    }

    pub fn h_dual(&self) -> &Rational {
        &self.h_dual
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(|r| r.iter().all(|c| c.is_empty()))
    }

    /// Structure constants as a flat list `(i, j, k, c)` with `i < j`.
    pub fn bracket_list(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for (k, c) in &self.structure[i][j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    /// `[u, v]` for coordinate vectors.
    pub fn bracket_vec(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for (k, c) in &self.structure[i][j] {
                    out[*k] += &uv * c;
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut e = vec![Rational::zero(); self.dim];
        e[i] = Rational::one();
        e
    }

    fn check_jacobi(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let (x, y, z) = (self.unit(i), self.unit(j), self.unit(k));
                    let a = self.bracket_vec(&x, &self.bracket_vec(&y, &z));
                    let b = self.bracket_vec(&y, &self.bracket_vec(&z, &x));
                    let c = self.bracket_vec(&z, &self.bracket_vec(&x, &y));
                    if (0..self.dim).any(|t| !(&a[t] + &b[t] + &c[t]).is_zero()) {
                        return Err(Error::InvalidLie(format!("Jacobi identity fails on ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn form_value(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += &u[i] * self.form.get(i, j) * &v[j];
            }
        }
        acc
    }

    fn check_form(&self) -> Result<()> {
        if self.form.transpose() != self.form {
            return Err(Error::InvalidLie("form is not symmetric".into()));
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let (x, y, z) = (self.unit(i), self.unit(j), self.unit(k));
                    if self.form_value(&self.bracket_vec(&x, &y), &z) != self.form_value(&x, &self.bracket_vec(&y, &z)) {
                        return Err(Error::InvalidLie(format!("form is not invariant on ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Half the eigenvalue of `Σ κ^{ij} ad x_i ad x_j` on the adjoint
    /// representation; errors if the Casimir is not scalar.
    fn casimir_h_dual(&self) -> Result<Rational> {
        let d = self.dim;
        let mut cas = Matrix::zeros(d, d);
        for col in 0..d {
            let y = self.unit(col);
            let mut acc = vec![Rational::zero(); d];
            for i in 0..d {
                for j in 0..d {
                    let kij = self.form_inverse.get(i, j);
                    if kij.is_zero() {
                        continue;
                    }
                    let inner = self.bracket_vec(&self.unit(j), &y);
                    let outer = self.bracket_vec(&self.unit(i), &inner);
                    for t in 0..d {
                        acc[t] += kij * &outer[t];
                    }
                }
            }
            for (t, v) in acc.into_iter().enumerate() {
                cas.set(t, col, v);
            }
        }
        let lambda = cas.get(0, 0).clone();
        if cas != Matrix::identity(d).scaled(&lambda) {
            return Err(Error::InvalidLie(
                "Casimir is not scalar on the adjoint representation; Sugawara needs a simple or abelian algebra".into(),
            ));
        }
        Ok(lambda / q(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_constants() {
        let g = LieAlgebraData::sl2();
        assert_eq!(g.h_dual(), &q(2));
        assert!(!g.is_abelian());
        assert_eq!(g.bracket(0, 2), &[(1, q(1))]);
    }

    #[test]
    fn abelian_has_zero_h_dual() {
        let g = LieAlgebraData::abelian(2);
        assert!(g.is_abelian());
        assert_eq!(g.h_dual(), &q(0));
    }

    #[test]
    fn corrupted_constants_are_rejected() {
        let brackets = [(1, 0, 0, q(2)), (1, 2, 2, q(-2)), (0, 2, 1, q(3))];
        let form = LieAlgebraData::sl2().form().clone();
        assert!(matches!(LieAlgebraData::new(3, &brackets, form, None, None), Err(Error::InvalidLie(_))));
    }

    #[test]
    fn inconsistent_h_dual_is_rejected() {
        let g = LieAlgebraData::sl2();
        let r = LieAlgebraData::new(3, &g.bracket_list(), g.form().clone(), Some(q(4)), None);
        assert!(r.is_err());
        let halved = g.form().scaled(&crate::exact_algebra::qf(1, 2));
        let h = LieAlgebraData::new(3, &g.bracket_list(), halved, None, None).unwrap();
        assert_eq!(h.h_dual(), &q(4));
    }
}

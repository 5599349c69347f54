use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_algebra::{format_rational, BasisKey, Matrix, Rational, SpaceTag, Vector};
use crate::module_theory::{module_mode_action, module_virasoro, VoaModule};
use crate::report::{CheckReport, Component, Outcome, Witness};
use crate::voa_core::{mode_action, virasoro_mode, GradedSpace, LieAlgebraData, VertexAlgebra};

pub(crate) fn coords(v: &Vector, level: usize, dim: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (k, c) in v.iter() {
        debug_assert_eq!(k.level, level);
        out[k.index] = c.clone();
    }
    out
}

pub(crate) fn unit(dim: usize, i: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); dim];
    e[i] = Rational::from_integer(1.into());
    e
}

pub(crate) fn mat_vec(m: &Matrix, x: &[Rational]) -> Vec<Rational> {
    (0..m.rows())
        .map(|i| m.row(i).iter().zip(x).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub(crate) fn describe_coords(labels: &[String], x: &[Rational]) -> String {
    let parts: Vec<String> = x
        .iter()
        .zip(labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| format!("{}*{l}", format_rational(c)))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Finite-dimensional Lie algebra given by dense structure constants,
/// typically the degree-one subspace of a VOA with `[a, b] = a_0 b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieLevelOne {
    tag: SpaceTag,
    labels: Vec<String>,
    /// `structure[i][j]` holds the coordinates of `[e_i, e_j]`.
    structure: Vec<Vec<Vec<Rational>>>,
    quasi_primary: bool,
}

impl LieLevelOne {
    pub fn from_data(lie: &LieAlgebraData, tag: SpaceTag) -> Self {
        let d = lie.dim();
        let structure = (0..d)
            .map(|i| (0..d).map(|j| lie.bracket_vec(&unit(d, i), &unit(d, j))).collect())
            .collect();
        LieLevelOne { tag, labels: lie.names().to_vec(), structure, quasi_primary: true }
    }

    /// `g ⋉ M` with `[a + u, b + v] = [a, b] + ρ(a)v - ρ(b)u`; the basis of
    /// `g` comes first.
    pub fn semidirect(g: &LieLevelOne, m: &LieModuleOne, tag: SpaceTag) -> Result<Self> {
        if m.rho.len() != g.dim() {
            return Err(Error::Shape(format!("module has {} action matrices for a {}-dimensional algebra", m.rho.len(), g.dim())));
        }
        let (dg, dm) = (g.dim(), m.dim());
        let d = dg + dm;
        let mut structure = vec![vec![vec![Rational::zero(); d]; d]; d];
        for a in 0..dg {
            for b in 0..dg {
                structure[a][b][..dg].clone_from_slice(&g.structure[a][b]);
            }
            for v in 0..dm {
                for (k, c) in (0..dm).map(|k| (k, m.rho[a].get(k, v))) {
                    structure[a][dg + v][dg + k] = c.clone();
                    structure[dg + v][a][dg + k] = -c.clone();
                }
            }
        }
        let mut labels = g.labels.clone();
        labels.extend(m.labels.iter().cloned());
        Ok(LieLevelOne { tag, labels, structure, quasi_primary: g.quasi_primary && m.quasi_primary })
    }

    pub fn tag(&self) -> &SpaceTag {
        &self.tag
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Whether `L(1)` kills the degree-one subspace it was extracted from.
    pub fn quasi_primary(&self) -> bool {
        self.quasi_primary
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.structure[i][j]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = xi * yj;
                for (k, s) in self.structure[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        out[k] += &c * s;
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Antisymmetry and the Jacobi identity on basis elements.
    pub fn verify(&self) -> Result<CheckReport> {
        let d = self.dim();
        let mut report = CheckReport::new(format!("Lie algebra axioms on {} (dim {d})", self.tag));
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect();
        report.push(Component::evaluate("antisymmetry", &pairs, |&(i, j)| {
            let lhs = self.structure[i][j].clone();
            let rhs: Vec<Rational> = self.structure[j][i].iter().map(|c| -c.clone()).collect();
            Ok(self.outcome(format!("[{}, {}]", self.labels[i], self.labels[j]), &lhs, &rhs))
        })?);
        let triples: Vec<(usize, usize, usize)> =
            (0..d).flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k)))).collect();
        report.push(Component::evaluate("jacobi", &triples, |&(i, j, k)| {
            let (ei, ej, ek) = (unit(d, i), unit(d, j), unit(d, k));
            let lhs = self.bracket(&ei, &self.bracket(&ej, &ek));
            let mut rhs = self.bracket(&self.bracket(&ei, &ej), &ek);
            for (r, c) in rhs.iter_mut().zip(self.bracket(&ej, &self.bracket(&ei, &ek))) {
                *r += c;
            }
            Ok(self.outcome(format!("{}, {}, {}", self.labels[i], self.labels[j], self.labels[k]), &lhs, &rhs))
        })?);
        report.coverage.push(format!("{} basis pairs, {} basis triples", pairs.len(), triples.len()));
        Ok(report)
    }

    pub(crate) fn outcome(&self, instance: String, lhs: &[Rational], rhs: &[Rational]) -> Outcome {
        if lhs == rhs {
            Outcome::Pass
        } else {
            Outcome::Fail(Witness {
                instance,
                lhs: describe_coords(&self.labels, lhs),
                rhs: describe_coords(&self.labels, rhs),
            })
        }
    }
}

/// Representation of a Lie algebra on a finite-dimensional space, one action
/// matrix per basis element of the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieModuleOne {
    labels: Vec<String>,
    rho: Vec<Matrix>,
    quasi_primary: bool,
}

impl LieModuleOne {
    pub fn new(labels: Vec<String>, rho: Vec<Matrix>) -> Result<Self> {
        let d = labels.len();
        if rho.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::Shape(format!("action matrices must be {d}x{d}")));
        }
        Ok(LieModuleOne { labels, rho, quasi_primary: true })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn quasi_primary(&self) -> bool {
        self.quasi_primary
    }

    /// Action matrix of the `a`-th basis element.
    pub fn rho(&self, a: usize) -> &Matrix {
        &self.rho[a]
    }

    /// `ρ(x) u` for coordinate vectors.
    pub fn act(&self, x: &[Rational], u: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (a, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (o, y) in out.iter_mut().zip(mat_vec(&self.rho[a], u)) {
                *o += c * y;
            }
        }
        out
    }

    /// Dual representation `ρ*(a) = -ρ(a)^T` on the dual basis.
    pub fn dual(&self) -> LieModuleOne {
        LieModuleOne {
            labels: self.labels.iter().map(|l| format!("({l})*")).collect(),
            rho: self.rho.iter().map(|m| m.transpose().scaled(&Rational::from_integer((-1).into()))).collect(),
            quasi_primary: self.quasi_primary,
        }
    }

    /// `ρ([a, b]) = ρ(a)ρ(b) - ρ(b)ρ(a)` on basis pairs.
    pub fn verify(&self, g: &LieLevelOne) -> Result<CheckReport> {
        if self.rho.len() != g.dim() {
            return Err(Error::Shape("module and algebra dimensions differ".into()));
        }
        let d = g.dim();
        let mut report = CheckReport::new(format!("representation of {} on a {}-dimensional space", g.tag(), self.dim()));
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect();
        report.push(Component::evaluate("homomorphism", &pairs, |&(i, j)| {
            let ab = g.bracket_basis(i, j);
            let mut lhs = Matrix::zeros(self.dim(), self.dim());
            for (k, c) in ab.iter().enumerate() {
                lhs = lhs.plus(&self.rho[k].scaled(c))?;
            }
            let rhs = self.rho[i].mul(&self.rho[j])?.minus(&self.rho[j].mul(&self.rho[i])?)?;
            Ok(if lhs == rhs {
                Outcome::Pass
            } else {
                Outcome::Fail(Witness {
                    instance: format!("a = {}, b = {}", g.labels()[i], g.labels()[j]),
                    lhs: format!("{lhs:?}"),
                    rhs: format!("{rhs:?}"),
                })
            })
        })?);
        report.coverage.push(format!("{} basis pairs", pairs.len()));
        Ok(report)
    }
}

fn level_one<S: GradedSpace + ?Sized>(s: &S) -> Result<usize> {
    if s.max_degree() < 1 {
        return Err(Error::Precondition("the degree-one subspace lies outside the window".into()));
    }
    Ok(s.dim(1))
}

/// Degree-one Lie algebra `V_1` with `[a, b] = a_0 b`.
pub fn level1_lie<V: VertexAlgebra + ?Sized>(v: &V) -> Result<LieLevelOne> {
    let d = level_one(v)?;
    let keys = v.basis_keys(1);
    let mut structure = vec![vec![Vec::new(); d]; d];
    let mut quasi_primary = true;
    for &a in &keys {
        let av = Vector::basis(a);
        quasi_primary &= virasoro_mode(v, 1, &av)?.is_zero();
        for &b in &keys {
            let ab = mode_action(v, &av, 0, &Vector::basis(b))?;
            structure[a.index][b.index] = coords(&ab, 1, d);
        }
    }
    let labels = keys.iter().map(|k| v.label(*k)).collect();
    Ok(LieLevelOne { tag: v.tag(), labels, structure, quasi_primary })
}

/// Degree-one piece `W(1)` of a module with `ρ(a) u = a_0 u` for `a ∈ V_1`.
pub fn level1_module<M: VoaModule + ?Sized>(w: &M) -> Result<LieModuleOne> {
    let v = w.algebra();
    let dv = level_one(v.as_ref())?;
    let dw = level_one(w)?;
    let mut rho = vec![Matrix::zeros(dw, dw); dv];
    for a in 0..dv {
        let av = Vector::basis(BasisKey::new(1, a));
        for u in w.basis_keys(1) {
            let img = module_mode_action(w, &av, 0, &Vector::basis(u))?;
            for (k, c) in img.iter() {
                if k.level != 1 {
                    return Err(Error::Precondition("a_0 does not preserve the degree-one subspace".into()));
                }
                rho[a].set(k.index, u.index, c.clone());
            }
        }
    }
    let mut quasi_primary = true;
    for u in w.basis_keys(1) {
        quasi_primary &= module_virasoro(w, 1, &Vector::basis(u))?.is_zero();
    }
    let labels = w.basis_keys(1).iter().map(|k| w.label(*k)).collect();
    Ok(LieModuleOne { labels, rho, quasi_primary })
}

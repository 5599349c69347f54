use num_traits::Zero;

use super::lie::{describe_coords, mat_vec, unit, LieLevelOne, LieModuleOne};
use crate::error::{Error, Result};
use crate::exact_algebra::{format_rational, Matrix, Rational, SpaceTag};
use crate::report::{CheckReport, Component, Outcome, Witness};
use crate::yang_baxter::TripleComponent;

/// Two-tensor `R = Σ R_ij e_i ⊗ e_j` over a finite-dimensional Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieTensor {
    pub carrier: SpaceTag,
    pub matrix: Matrix,
}

impl LieTensor {
    pub fn new(carrier: SpaceTag, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::Shape("a two-tensor needs a square coefficient matrix".into()));
        }
        Ok(LieTensor { carrier, matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_skew(&self) -> bool {
        self.matrix.transpose().scaled(&Rational::from_integer((-1).into())) == self.matrix
    }

    fn entries(&self) -> Vec<(usize, usize, Rational)> {
        let d = self.dim();
        (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let c = self.matrix.get(i, j);
                (!c.is_zero()).then(|| (i, j, c.clone()))
            })
            .collect()
    }
}

/// The three brackets `[R12, R13]`, `[R12, R23]`, `[R13, R23]` as elements
/// of `g ⊗ g ⊗ g`, stored with all slots at level 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CybeBrackets {
    pub r12_r13: TripleComponent,
    pub r12_r23: TripleComponent,
    pub r13_r23: TripleComponent,
}

impl CybeBrackets {
    /// `[[R, R]]`.
    pub fn total(&self) -> TripleComponent {
        let one = Rational::from_integer(1.into());
        let mut t = self.r12_r13.clone();
        t.add_scaled(&self.r12_r23, &one);
        t.add_scaled(&self.r13_r23, &one);
        t
    }
}

pub fn cybe_brackets(g: &LieLevelOne, r: &LieTensor) -> Result<CybeBrackets> {
    if r.dim() != g.dim() {
        return Err(Error::Shape(format!("tensor over a {}-dimensional space, algebra has dim {}", r.dim(), g.dim())));
    }
    let levels = (1, 1, 1);
    let mut out = CybeBrackets {
        r12_r13: TripleComponent::zero(levels),
        r12_r23: TripleComponent::zero(levels),
        r13_r23: TripleComponent::zero(levels),
    };
    let entries = r.entries();
    for (i, j, c1) in &entries {
        for (k, l, c2) in &entries {
            let c = c1 * c2;
            // [e_i, e_k] ⊗ e_j ⊗ e_l
            for (x, s) in g.bracket_basis(*i, *k).iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                out.r12_r13.add_entry((x, *j, *l), &(&c * s));
            }
            // e_i ⊗ [e_j, e_k] ⊗ e_l
            for (x, s) in g.bracket_basis(*j, *k).iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                out.r12_r23.add_entry((*i, x, *l), &(&c * s));
            }
            // e_i ⊗ e_k ⊗ [e_j, e_l]
            for (x, s) in g.bracket_basis(*j, *l).iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                out.r13_r23.add_entry((*i, *k, x), &(&c * s));
            }
        }
    }
    Ok(out)
}

/// Checks `[[R, R]] = 0` coefficientwise on every basis triple.
pub fn check_cybe(g: &LieLevelOne, r: &LieTensor) -> Result<CheckReport> {
    let total = cybe_brackets(g, r)?.total();
    let d = g.dim();
    let labels = g.labels();
    let mut report = CheckReport::new(format!("classical Yang-Baxter equation on {} (dim {d})", g.tag()));
    if !r.is_skew() {
        report.notes.push("tensor is not skewsymmetric".into());
    }
    let triples: Vec<(usize, usize, usize)> =
        (0..d).flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k)))).collect();
    report.push(Component::evaluate("[[R,R]]", &triples, |&(i, j, k)| {
        let c = total.get((i, j, k));
        Ok(if c.is_zero() {
            Outcome::Pass
        } else {
            Outcome::Fail(Witness {
                instance: format!("coefficient of {} ⊗ {} ⊗ {}", labels[i], labels[j], labels[k]),
                lhs: format_rational(&c),
                rhs: "0".into(),
            })
        })
    })?);
    report.coverage.push(format!("{} basis triples", triples.len()));
    Ok(report)
}

/// Checks `[T u, T v] = T(ρ(T u) v) - T(ρ(T v) u)` on basis pairs of the
/// module, with `T` given as a `dim g × dim M` matrix.
pub fn check_lie_o_operator(g: &LieLevelOne, m: &LieModuleOne, t: &Matrix) -> Result<CheckReport> {
    if t.rows() != g.dim() || t.cols() != m.dim() {
        return Err(Error::Shape(format!(
            "operator is {}x{}, expected {}x{}",
            t.rows(),
            t.cols(),
            g.dim(),
            m.dim()
        )));
    }
    let d = m.dim();
    let mut report = CheckReport::new(format!("relative Rota-Baxter identity of {} on a {d}-dimensional module", g.tag()));
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect();
    report.push(Component::evaluate("o_operator", &pairs, |&(i, j)| {
        let (u, v) = (unit(d, i), unit(d, j));
        let (tu, tv) = (mat_vec(t, &u), mat_vec(t, &v));
        let lhs = g.bracket(&tu, &tv);
        let mut rhs = mat_vec(t, &m.act(&tu, &v));
        for (r, x) in rhs.iter_mut().zip(mat_vec(t, &m.act(&tv, &u))) {
            *r -= x;
        }
        Ok(if lhs == rhs {
            Outcome::Pass
        } else {
            Outcome::Fail(Witness {
                instance: format!("u = {}, v = {}", m.labels()[i], m.labels()[j]),
                lhs: describe_coords(g.labels(), &lhs),
                rhs: describe_coords(g.labels(), &rhs),
            })
        })
    })?);
    report.coverage.push(format!("{} basis pairs", pairs.len()));
    Ok(report)
}

/// `T - T^21 = Σ_i T(v_i) ⊗ v_i* - v_i* ⊗ T(v_i)` in `g ⋉ M*`, where the
/// basis of `g` precedes the dual basis of `M`.
pub fn skew_tensor_of_operator(t: &Matrix, carrier: SpaceTag) -> Result<LieTensor> {
    let (dg, dm) = (t.rows(), t.cols());
    let mut r = Matrix::zeros(dg + dm, dg + dm);
    for k in 0..dg {
        for i in 0..dm {
            let c = t.get(k, i);
            r.set(k, dg + i, c.clone());
            r.set(dg + i, k, -c.clone());
        }
    }
    LieTensor::new(carrier, r)
}

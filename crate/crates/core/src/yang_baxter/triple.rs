use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use super::tensor::DiagonalTensor;
use crate::error::{Error, Result};
use crate::exact_algebra::{format_rational, BasisKey, Rational, Vector};
use crate::module_theory::SemidirectVOA;
use crate::report::{CheckReport, Component, Outcome, Witness};
use crate::voa_core::{m_dot, DotKind, GradedSpace, VertexAlgebra};

/// Homogeneous element of `U(p1) ⊗ U(p2) ⊗ U(p3)` as a sparse table on basis
/// index triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleComponent {
    pub levels: (usize, usize, usize),
    entries: BTreeMap<(usize, usize, usize), Rational>,
}

impl TripleComponent {
    pub fn zero(levels: (usize, usize, usize)) -> Self {
        TripleComponent { levels, entries: BTreeMap::new() }
    }

    pub fn add_entry(&mut self, idx: (usize, usize, usize), c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(idx).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&idx);
        }
    }

    pub fn get(&self, idx: (usize, usize, usize)) -> Rational {
        self.entries.get(&idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_scaled(&mut self, other: &TripleComponent, c: &Rational) {
        for (idx, x) in &other.entries {
            self.add_entry(*idx, &(x * c));
        }
    }

    /// Evaluation `(a ⊗ b ⊗ c)(g ⊗ f) = a <g, b> <f, c>` for coordinate
    /// functionals `g` on `U(p2)` and `f` on `U(p3)`.
    pub fn contract(&self, g: &Vector, f: &Vector) -> Vector {
        let (p1, p2, p3) = self.levels;
        let mut out = Vector::zero();
        for (&(a, b, c), x) in &self.entries {
            let gb = g.get(&BasisKey::new(p2, b));
            let fc = f.get(&BasisKey::new(p3, c));
            out.add_term(BasisKey::new(p1, a), x * gb * fc);
        }
        out
    }

    /// Keeps the entries whose slots satisfy `keep`.
    pub fn filtered(&self, keep: impl Fn(BasisKey, BasisKey, BasisKey) -> bool) -> TripleComponent {
        let (p1, p2, p3) = self.levels;
        TripleComponent {
            levels: self.levels,
            entries: self
                .entries
                .iter()
                .filter(|(&(a, b, c), _)| keep(BasisKey::new(p1, a), BasisKey::new(p2, b), BasisKey::new(p3, c)))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

fn dot_table<V: VertexAlgebra + ?Sized>(
    u: &V,
    kind: DotKind,
    m: i64,
) -> impl FnMut(BasisKey, BasisKey) -> Result<Vector> + '_ {
    let mut cache: HashMap<(BasisKey, BasisKey), Vector> = HashMap::new();
    move |x, y| {
        if let Some(v) = cache.get(&(x, y)) {
            return Ok(v.clone());
        }
        let v = m_dot(u, kind, &Vector::basis(x), m, &Vector::basis(y))?;
        cache.insert((x, y), v.clone());
        Ok(v)
    }
}

/// The three products `r^s_12 ·_m r^t_13`, `r^t_23 ·'_m r^p_12` and
/// `r^p_13 ·'op_m r^s_23` with `p = s + t - m - 1`, each in
/// `U(p) ⊗ U(s) ⊗ U(t)`, obtained by multiplying pure tensors slotwise.
pub fn triple_products<V: VertexAlgebra + ?Sized>(
    u: &V,
    r: &DiagonalTensor,
    m: i64,
    s: usize,
    t: usize,
) -> Result<[TripleComponent; 3]> {
    let p = u.window(s as i64 + t as i64 - m - 1)?.ok_or_else(|| {
        Error::Precondition(format!("level s + t - m - 1 is negative for (s, t, m) = ({s}, {t}, {m})"))
    })?;
    let levels = (p, s, t);
    let rs: Vec<_> = r.level_entries(s).map(|(k, c)| (*k, c.clone())).collect();
    let rt: Vec<_> = r.level_entries(t).map(|(k, c)| (*k, c.clone())).collect();
    let rp: Vec<_> = r.level_entries(p).map(|(k, c)| (*k, c.clone())).collect();

    // (x ⊗ y ⊗ I)(x' ⊗ I ⊗ y') = x ·_m x' ⊗ y ⊗ y'
    let mut first = TripleComponent::zero(levels);
    let mut plain = dot_table(u, DotKind::Plain, m);
    for ((i, j), c1) in &rs {
        for ((k, l), c2) in &rt {
            let prod = plain(BasisKey::new(s, *i), BasisKey::new(t, *k))?;
            let c = c1 * c2;
            for (a, x) in prod.iter() {
                first.add_entry((a.index, *j, *l), &(&c * x));
            }
        }
    }

    // (I ⊗ x ⊗ y)(x' ⊗ y' ⊗ I) = x' ⊗ x ·'_m y' ⊗ y
    let mut second = TripleComponent::zero(levels);
    let mut primed = dot_table(u, DotKind::Primed, m);
    for ((i, j), c1) in &rt {
        for ((k, l), c2) in &rp {
            let prod = primed(BasisKey::new(t, *i), BasisKey::new(p, *l))?;
            let c = c1 * c2;
            for (b, x) in prod.iter() {
                second.add_entry((*k, b.index, *j), &(&c * x));
            }
        }
    }

    // (x ⊗ I ⊗ y)(I ⊗ x' ⊗ y') = x ⊗ x' ⊗ y ·'op_m y'
    let mut third = TripleComponent::zero(levels);
    let mut op = dot_table(u, DotKind::PrimedOp, m);
    for ((i, j), c1) in &rp {
        for ((k, l), c2) in &rs {
            let prod = op(BasisKey::new(p, *j), BasisKey::new(s, *l))?;
            let c = c1 * c2;
            for (x3, x) in prod.iter() {
                third.add_entry((*i, *k, x3.index), &(&c * x));
            }
        }
    }
    Ok([first, second, third])
}

/// `α_{s,t} = r^s_12 ·_m r^t_13 - r^t_23 ·'_m r^p_12 + r^p_13 ·'op_m r^s_23`.
pub fn residual_component<V: VertexAlgebra + ?Sized>(
    u: &V,
    r: &DiagonalTensor,
    m: i64,
    s: usize,
    t: usize,
) -> Result<TripleComponent> {
    let [first, second, third] = triple_products(u, r, m, s, t)?;
    let mut out = first;
    out.add_scaled(&second, &-Rational::from_integer(1.into()));
    out.add_scaled(&third, &Rational::from_integer(1.into()));
    Ok(out)
}

/// All residual components for one `m` over the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub m: i64,
    pub components: BTreeMap<(usize, usize), TripleComponent>,
    /// `(s, t)` pairs whose evaluation left the window.
    pub gaps: Vec<(usize, usize)>,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.components.values().all(|c| c.is_zero())
    }
}

/// The `(s, t)` pairs with `s, t ≤ N` and `0 ≤ s + t - m - 1 ≤ N`.
pub fn coverage_pairs(n: usize, m: i64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in 0..=n {
        for t in 0..=n {
            let p = s as i64 + t as i64 - m - 1;
            if (0..=n as i64).contains(&p) {
                out.push((s, t));
            }
        }
    }
    out
}

pub fn voybe_residual<V: VertexAlgebra + ?Sized>(u: &V, r: &DiagonalTensor, m: i64) -> Result<Residual> {
    r.require_skew()?;
    let pairs = coverage_pairs(u.max_degree(), m);
    let results: Vec<_> =
        pairs.par_iter().map(|&(s, t)| ((s, t), residual_component(u, r, m, s, t))).collect();
    let mut res = Residual { m, components: BTreeMap::new(), gaps: Vec::new() };
    for (st, c) in results {
        match c {
            Ok(c) => {
                res.components.insert(st, c);
            }
            Err(Error::OutOfWindow { .. }) => res.gaps.push(st),
            Err(e) => return Err(e),
        }
    }
    Ok(res)
}

fn triple_label<V: GradedSpace + ?Sized>(u: &V, levels: (usize, usize, usize), idx: (usize, usize, usize)) -> String {
    format!(
        "{} ⊗ {} ⊗ {}",
        u.label(BasisKey::new(levels.0, idx.0)),
        u.label(BasisKey::new(levels.1, idx.1)),
        u.label(BasisKey::new(levels.2, idx.2))
    )
}

fn residual_outcome<V: GradedSpace + ?Sized>(u: &V, m: i64, st: (usize, usize), c: &TripleComponent) -> Outcome {
    match c.entries().next() {
        None => Outcome::Pass,
        Some((idx, x)) => Outcome::Fail(Witness {
            instance: format!("alpha_(s,t) for (s, t) = ({}, {}), m = {m}, at {}", st.0, st.1, triple_label(u, c.levels, *idx)),
            lhs: format_rational(x),
            rhs: "0".into(),
        }),
    }
}

fn m_set_note(ms: &[i64]) -> String {
    let list: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
    format!(
        "checked m in {{{}}}; the equation is stated for all m in N and its generating series runs over all m in Z, \
         so a pass covers the listed m only",
        list.join(", ")
    )
}

/// Checks the m-VOYBE for each `m` in `ms`. A pass means every covered
/// residual component vanishes; the coverage lists the `(s, t)` pairs.
pub fn check_voybe<V: VertexAlgebra + ?Sized>(u: &V, r: &DiagonalTensor, ms: &[i64]) -> Result<CheckReport> {
    r.require_skew()?;
    let mut report = CheckReport::new(format!("m-VOYBE on {} (N = {})", u.tag(), u.max_degree()));
    for &m in ms {
        let res = voybe_residual(u, r, m)?;
        let mut comp = Component::new(format!("m={m}"));
        for (st, c) in &res.components {
            comp.record(residual_outcome(u, m, *st, c));
        }
        for _ in &res.gaps {
            comp.record(Outcome::Skipped);
        }
        let pairs: Vec<String> = res.components.keys().map(|(s, t)| format!("({s},{t})")).collect();
        report.coverage.push(format!("m={m}: (s,t) in [{}]", pairs.join(" ")));
        if !res.gaps.is_empty() {
            let gaps: Vec<String> = res.gaps.iter().map(|(s, t)| format!("({s},{t})")).collect();
            report.notes.push(format!("m={m}: out of window at [{}]", gaps.join(" ")));
        }
        report.push(comp);
    }
    report.notes.push(m_set_note(ms));
    Ok(report)
}

/// Residual blocks of a tensor on `U = V ⋊ W'`, by which slot carries `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSplit {
    /// `V ⊗ W' ⊗ W'`
    pub a: TripleComponent,
    /// `W' ⊗ V ⊗ W'`
    pub b: TripleComponent,
    /// `W' ⊗ W' ⊗ V`
    pub c: TripleComponent,
    /// Every other slot pattern.
    pub other: TripleComponent,
}

pub fn split_blocks(u: &SemidirectVOA, c: &TripleComponent) -> BlockSplit {
    let pattern = |x: BasisKey, y: BasisKey, z: BasisKey| (u.in_base(x), u.in_base(y), u.in_base(z));
    BlockSplit {
        a: c.filtered(|x, y, z| pattern(x, y, z) == (true, false, false)),
        b: c.filtered(|x, y, z| pattern(x, y, z) == (false, true, false)),
        c: c.filtered(|x, y, z| pattern(x, y, z) == (false, false, true)),
        other: c.filtered(|x, y, z| {
            !matches!(pattern(x, y, z), (true, false, false) | (false, true, false) | (false, false, true))
        }),
    }
}

/// Per-block m-VOYBE report on a semidirect product: `block_a` collects the
/// `V ⊗ W' ⊗ W'` entries, `block_b` the `W' ⊗ V ⊗ W'` entries and `block_c`
/// the `W' ⊗ W' ⊗ V` entries.
pub fn check_voybe_blocks(u: &SemidirectVOA, r: &DiagonalTensor, ms: &[i64]) -> Result<CheckReport> {
    r.require_skew()?;
    let mut report = CheckReport::new(format!("m-VOYBE blocks on {} (N = {})", u.tag(), u.max_degree()));
    for &m in ms {
        let res = voybe_residual(u, r, m)?;
        let mut comps: Vec<Component> =
            ["block_a", "block_b", "block_c", "block_other"].iter().map(|n| Component::new(format!("{n} m={m}"))).collect();
        for (st, c) in &res.components {
            let split = split_blocks(u, c);
            for (comp, part) in comps.iter_mut().zip([&split.a, &split.b, &split.c, &split.other]) {
                comp.record(residual_outcome(u, m, *st, part));
            }
        }
        for comp in &mut comps {
            for _ in &res.gaps {
                comp.record(Outcome::Skipped);
            }
        }
        let pairs: Vec<String> = res.components.keys().map(|(s, t)| format!("({s},{t})")).collect();
        report.coverage.push(format!("m={m}: (s,t) in [{}]", pairs.join(" ")));
        for comp in comps {
            report.push(comp);
        }
    }
    report.notes.push(m_set_note(ms));
    Ok(report)
}

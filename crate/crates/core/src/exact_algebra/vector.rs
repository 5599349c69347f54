use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// Position of a basis element: graded level and index inside that level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisKey {
    pub level: usize,
    pub index: usize,
}

impl BasisKey {
    pub fn new(level: usize, index: usize) -> Self {
        BasisKey { level, index }
    }
}

/// Sparse exact vector over the cached basis of a graded space.
///
/// Zero coefficients are never stored, so equality is structural.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vector {
    terms: BTreeMap<BasisKey, Rational>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis(key: BasisKey) -> Self {
        Self::term(key, Rational::from_integer(1.into()))
    }

    pub fn term(key: BasisKey, c: Rational) -> Self {
        let mut v = Vector::zero();
        v.add_term(key, c);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisKey, Rational)>>(terms: I) -> Self {
        let mut v = Vector::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &BasisKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisKey, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &BasisKey> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: BasisKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Vector, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(*k, v * c);
        }
    }

    pub fn add(&mut self, other: &Vector) {
        for (k, v) in &other.terms {
            self.add_term(*k, v.clone());
        }
    }

    pub fn sub(&mut self, other: &Vector) {
        for (k, v) in &other.terms {
            self.add_term(*k, -v.clone());
        }
    }

    pub fn scaled(&self, c: &Rational) -> Vector {
        let mut out = Vector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Vector {
        Vector {
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }

    pub fn minus(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.sub(other);
        out
    }

    /// Sub-sum of the terms at `level`.
    pub fn component(&self, level: usize) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.level == level)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Levels carrying a nonzero term, ascending.
    pub fn levels(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.terms.keys().map(|k| k.level).collect();
        out.dedup();
        out
    }

    /// The single level of a nonzero homogeneous vector.
    pub fn homogeneous_level(&self) -> Result<Option<usize>> {
        let levels = self.levels();
        match levels.len() {
            0 => Ok(None),
            1 => Ok(Some(levels[0])),
            _ => Err(Error::NotHomogeneous),
        }
    }

    /// Coordinate contraction `Σ self[k] * other[k]`.
    pub fn dot(&self, other: &Vector) -> Rational {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Rational::zero();
        for (k, v) in &small.terms {
            if let Some(w) = large.terms.get(k) {
                acc += v * w;
            }
        }
        acc
    }

    /// Applies a basis-to-vector map linearly.
    pub fn map_linear<F>(&self, mut f: F) -> Result<Vector>
    where
        F: FnMut(BasisKey) -> Result<Vector>,
    {
        let mut out = Vector::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(*k)?, c);
        }
        Ok(out)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("{}*[{}:{}]", super::format_rational(c), k.level, k.index))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Name of the carrier a vector lives in. Duals are written `(X)'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceTag(pub String);

impl SpaceTag {
    pub fn new(s: impl Into<String>) -> Self {
        SpaceTag(s.into())
    }

    pub fn dual(&self) -> SpaceTag {
        SpaceTag(format!("({})'", self.0))
    }
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A vector together with the tag of its carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVector {
    pub space: SpaceTag,
    pub vector: Vector,
}

impl GradedVector {
    pub fn new(space: SpaceTag, vector: Vector) -> Self {
        GradedVector { space, vector }
    }

    pub fn component(&self, level: usize) -> GradedVector {
        GradedVector::new(self.space.clone(), self.vector.component(level))
    }
}

/// Exact linear combination of vectors sharing one carrier.
pub fn linear_combine(coeffs: &[Rational], vecs: &[GradedVector]) -> Result<GradedVector> {
    if coeffs.len() != vecs.len() {
        return Err(Error::Shape(format!("{} coefficients for {} vectors", coeffs.len(), vecs.len())));
    }
    let Some(first) = vecs.first() else {
        return Err(Error::Precondition("linear_combine needs at least one vector".into()));
    };
    let mut out = Vector::zero();
    for (c, v) in coeffs.iter().zip(vecs) {
        if v.space != first.space {
            return Err(Error::SpaceMismatch { expected: first.space.0.clone(), found: v.space.0.clone() });
        }
        out.add_scaled(&v.vector, c);
    }
    Ok(GradedVector::new(first.space.clone(), out))
}

/// `<f, v>` for `f` in the graded dual of `v`'s carrier, against the
/// coordinate dual basis.
pub fn dual_pairing(f: &GradedVector, v: &GradedVector) -> Result<Rational> {
    let expected = v.space.dual();
    if f.space != expected {
        return Err(Error::SpaceMismatch { expected: expected.0, found: f.space.0.clone() });
    }
    Ok(f.vector.dot(&v.vector))
}

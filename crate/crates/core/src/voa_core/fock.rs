use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use super::lie::LieAlgebraData;
use super::pbw::{Factor, Monomial, PbwBasis};
use crate::error::{Error, Result};
use crate::exact_algebra::{binomial, format_rational, q, sign, BasisKey, Rational, Vector};

type GenKey = (usize, i64, BasisKey);
type ModeKey = (BasisKey, i64, BasisKey);

/// Fock-type space `U(ĝ_-) ⊗ top` for the current algebra of `lie` at level
/// `k`, truncated at degree `N`. The top vector is annihilated by positive
/// modes and `x(0)` acts on it by the scalar `top[x]`.
///
/// Vectors of the algebra are encoded in the same PBW basis, so
/// [`FockSpace::mode`] evaluates `a_q u` for `a` in the vacuum space and
/// `u` in this one.
#[derive(Debug)]
pub struct FockSpace {
    lie: Arc<LieAlgebraData>,
    level: Rational,
    top: Vec<Rational>,
    basis: PbwBasis,
    gen_cache: RwLock<HashMap<GenKey, Arc<Vector>>>,
    mode_cache: RwLock<HashMap<ModeKey, Arc<Vector>>>,
}

impl FockSpace {
    pub fn new(lie: Arc<LieAlgebraData>, level: Rational, top: Vec<Rational>, max_degree: usize) -> Result<Self> {
        if top.len() != lie.dim() {
            return Err(Error::Shape(format!("{} top eigenvalues for rank {}", top.len(), lie.dim())));
        }
        // x(0) acts by scalars on the top, so the weight must kill [g, g].
        for (i, j, k, c) in lie.bracket_list() {
            if !(&c * &top[k]).is_zero() {
                return Err(Error::Precondition(format!(
                    "top weight does not vanish on [x{i}, x{j}]; a one-dimensional top needs a character"
                )));
            }
        }
        let basis = PbwBasis::new(lie.dim(), max_degree);
        Ok(FockSpace {
            lie,
            level,
            top,
            basis,
            gen_cache: RwLock::new(HashMap::new()),
            mode_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn lie(&self) -> &Arc<LieAlgebraData> {
        &self.lie
    }

    pub fn level(&self) -> &Rational {
        &self.level
    }

    pub fn top(&self) -> &[Rational] {
        &self.top
    }

    pub fn basis(&self) -> &PbwBasis {
        &self.basis
    }

    pub fn max_degree(&self) -> usize {
        self.basis.max_degree()
    }

    pub fn dim(&self, level: usize) -> usize {
        self.basis.dim(level)
    }

    pub fn top_key(&self) -> BasisKey {
        BasisKey::new(0, 0)
    }

    /// Display label such as `e(-1)h(-2)|0>`; the top label is the weight.
    pub fn label(&self, key: BasisKey) -> String {
        let mono = self.basis.monomial(key);
        let names = self.lie.names();
        let mut out = String::new();
        for f in mono.factors() {
            out.push_str(&format!("{}({})", names[f.gen], f.mode));
        }
        let top: Vec<String> = self.top.iter().map(format_rational).collect();
        out.push_str(&format!("|{}>", top.join(",")));
        out
    }

    /// Key of the normally ordered monomial, or `None` if it is not a basis
    /// element inside the window.
    pub fn key_of(&self, mono: &Monomial) -> Option<BasisKey> {
        self.basis.key(mono)
    }

    /// Target level of an operator of degree `-shift` on level `from`.
    fn target_level(&self, level: i64) -> Result<Option<usize>> {
        if level < 0 {
            return Ok(None);
        }
        if level as usize > self.max_degree() {
            return Err(Error::OutOfWindow { level, max: self.max_degree() });
        }
        Ok(Some(level as usize))
    }

    /// `x(m) u` for a generator `x` and basis vector `u`.
    pub fn gen_action(&self, x: usize, m: i64, u: BasisKey) -> Result<Arc<Vector>> {
        if self.target_level(u.level as i64 - m)?.is_none() {
            return Ok(Arc::new(Vector::zero()));
        }
        let key = (x, m, u);
        if let Some(v) = self.gen_cache.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.gen_action_uncached(x, m, u)?);
        self.gen_cache.write().expect("cache lock").entry(key).or_insert_with(|| v.clone());
        Ok(v)
    }

    fn gen_action_uncached(&self, x: usize, m: i64, u: BasisKey) -> Result<Vector> {
        let mono = self.basis.monomial(u);
        let new = Factor::new(x, m);
        let Some(first) = mono.factors().first().copied() else {
            return Ok(match m {
                0 => Vector::term(u, self.top[x].clone()),
                m if m > 0 => Vector::zero(),
                _ => Vector::basis(self.prepend(new, mono)),
            });
        };
        if m < 0 && new.order_key() <= first.order_key() {
            return Ok(Vector::basis(self.prepend(new, mono)));
        }
        // x(m) y(n) R = y(n) x(m) R + [x(m), y(n)] R
        let rest = Monomial(mono.factors()[1..].to_vec());
        let rest_key = self.basis.key(&rest).expect("tail of a basis monomial is a basis monomial");
        let mut out = Vector::zero();
        let moved = self.gen_action(x, m, rest_key)?;
        for (k, c) in moved.iter() {
            out.add_scaled(&*self.gen_action(first.gen, first.mode, *k)?, c);
        }
        for (z, c) in self.lie.bracket(x, first.gen) {
            out.add_scaled(&*self.gen_action(*z, m + first.mode, rest_key)?, c);
        }
        if m + first.mode == 0 {
            let central = q(m) * &self.level * self.lie.form().get(x, first.gen);
            out.add_term(rest_key, central);
        }
        Ok(out)
    }

    fn prepend(&self, f: Factor, mono: &Monomial) -> BasisKey {
        let mut factors = Vec::with_capacity(mono.factors().len() + 1);
        factors.push(f);
        factors.extend_from_slice(mono.factors());
        self.basis.key(&Monomial(factors)).expect("window checked by caller")
    }

    pub fn gen_action_vec(&self, x: usize, m: i64, v: &Vector) -> Result<Vector> {
        v.map_linear(|k| Ok((*self.gen_action(x, m, k)?).clone()))
    }

    /// `a_q u` where `a` is the vacuum-space monomial with key `a` (same
    /// generators and PBW indexing) and `u` a basis vector of this space.
    ///
    /// For `a = x(-n) a'` this uses
    /// `(x(-n)a')_q = Σ_i C(n+i-1, i) [x(-n-i) a'_{q+i} - (-1)^n a'_{q-n-i} x(i)]`.
    pub fn mode(&self, algebra: &PbwBasis, a: BasisKey, q_: i64, u: BasisKey) -> Result<Arc<Vector>> {
        let target = a.level as i64 + u.level as i64 - q_ - 1;
        if self.target_level(target)?.is_none() {
            return Ok(Arc::new(Vector::zero()));
        }
        let key = (a, q_, u);
        if let Some(v) = self.mode_cache.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.mode_uncached(algebra, a, q_, u)?);
        self.mode_cache.write().expect("cache lock").entry(key).or_insert_with(|| v.clone());
        Ok(v)
    }

    fn mode_uncached(&self, algebra: &PbwBasis, a: BasisKey, q_: i64, u: BasisKey) -> Result<Vector> {
        let mono = algebra.monomial(a);
        let Some(head) = mono.factors().first().copied() else {
            return Ok(if q_ == -1 { Vector::basis(u) } else { Vector::zero() });
        };
        let tail = algebra.key(&Monomial(mono.factors()[1..].to_vec())).expect("tail is a basis monomial");
        let n = -head.mode;
        let x = head.gen;
        let mut out = Vector::zero();
        // Both sums vanish once i exceeds these bounds by grading.
        let bound = (tail.level as i64 + u.level as i64 - q_).max(u.level as i64);
        for i in 0..=bound.max(0) {
            let c = binomial(n + i - 1, i as usize);
            let inner = self.mode(algebra, tail, q_ + i, u)?;
            for (k, v) in inner.iter() {
                out.add_scaled(&*self.gen_action(x, -n - i, *k)?, &(&c * v));
            }
            if i as usize <= u.level {
                let lowered = self.gen_action(x, i, u)?;
                let c2 = -(&c * sign(n));
                for (k, v) in lowered.iter() {
                    out.add_scaled(&*self.mode(algebra, tail, q_ - n - i, *k)?, &(&c2 * v));
                }
            }
        }
        Ok(out)
    }

    pub fn cache_sizes(&self) -> (usize, usize) {
        (self.gen_cache.read().expect("cache lock").len(), self.mode_cache.read().expect("cache lock").len())
    }
}

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::config::{BuiltModule, ModuleSpec};
use crate::error::{Error, Result};
use crate::exact_algebra::{format_rational, parse_rational, BasisKey, Rational, SpaceTag, Vector};
use crate::voa_core::{CurrentVOA, FockSpace, GradedSpace};

fn is_false(b: &bool) -> bool {
    !*b
}

/// One term of a vector file: a creation monomial applied to the top
/// vector, or (with `dual`) the dual basis functional of that monomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VecTerm {
    pub mono: Vec<(usize, i64)>,
    pub coeff: String,
    #[serde(default, skip_serializing_if = "is_false")]
    pub dual: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VecJson {
    pub terms: Vec<VecTerm>,
}

/// Translates between vector files and coordinates in a concrete basis.
#[derive(Clone)]
pub enum SpaceCodec {
    /// A Fock-type space: the algebra itself or a Fock module.
    Fock { space: FockHandle, tag: SpaceTag },
    /// The graded dual of a Fock-type space, in the dual basis.
    Dual { inner: FockHandle, tag: SpaceTag },
    /// `V ⋊ M` with the basis of `V_n` first at every level.
    Semidirect { base: Box<SpaceCodec>, ideal: Box<SpaceCodec>, tag: SpaceTag },
}

#[derive(Clone)]
pub enum FockHandle {
    Algebra(Arc<CurrentVOA>),
    Module(Arc<crate::module_theory::FockModule>),
}

impl FockHandle {
    fn space(&self) -> &FockSpace {
        match self {
            FockHandle::Algebra(v) => v.space(),
            FockHandle::Module(m) => m.space(),
        }
    }
}

impl SpaceCodec {
    pub fn algebra(v: &Arc<CurrentVOA>) -> Self {
        SpaceCodec::Fock { space: FockHandle::Algebra(v.clone()), tag: v.tag() }
    }

    pub fn module(m: &BuiltModule) -> Self {
        let tag = m.module.tag();
        match (&m.spec, &m.fock) {
            (ModuleSpec::Fock(_), Some(f)) => SpaceCodec::Fock { space: FockHandle::Module(f.clone()), tag },
            (ModuleSpec::Coadjoint, _) => SpaceCodec::Dual { inner: FockHandle::Algebra(m.algebra.clone()), tag },
            _ => SpaceCodec::Fock { space: FockHandle::Algebra(m.algebra.clone()), tag },
        }
    }

    /// Codec of the contragredient of this space.
    pub fn dual(&self) -> Result<Self> {
        match self {
            SpaceCodec::Fock { space, tag } => Ok(SpaceCodec::Dual { inner: space.clone(), tag: tag.dual() }),
            _ => Err(Error::Precondition(format!("vector files cannot address the dual of {}", self.tag()))),
        }
    }

    pub fn semidirect(base: SpaceCodec, ideal: SpaceCodec, tag: SpaceTag) -> Self {
        SpaceCodec::Semidirect { base: Box::new(base), ideal: Box::new(ideal), tag }
    }

    pub fn tag(&self) -> SpaceTag {
        match self {
            SpaceCodec::Fock { tag, .. } | SpaceCodec::Dual { tag, .. } | SpaceCodec::Semidirect { tag, .. } => tag.clone(),
        }
    }

    fn base_dim(&self, level: usize) -> usize {
        match self {
            SpaceCodec::Fock { space, .. } | SpaceCodec::Dual { inner: space, .. } => space.space().dim(level),
            SpaceCodec::Semidirect { base, ideal, .. } => base.base_dim(level) + ideal.base_dim(level),
        }
    }

    fn monomial_vector(space: &FockSpace, mono: &[(usize, i64)], at: &str) -> Result<Vector> {
        let rank = space.lie().dim();
        let mut v = Vector::basis(space.top_key());
        for &(g, m) in mono.iter().rev() {
            if g >= rank {
                return Err(Error::Parse(format!("{at}: generator {g} out of range (rank {rank})")));
            }
            v = space.gen_action_vec(g, m, &v).map_err(|e| Error::Parse(format!("{at}: {e}")))?;
        }
        Ok(v)
    }

    fn decode_term(&self, t: &VecTerm, at: &str) -> Result<Vector> {
        let c = parse_rational(&t.coeff).map_err(|e| Error::Parse(format!("{at}.coeff: {e}")))?;
        match self {
            SpaceCodec::Fock { space, tag } => {
                if t.dual {
                    return Err(Error::Parse(format!("{at}: dual term in {tag}")));
                }
                Ok(Self::monomial_vector(space.space(), &t.mono, at)?.scaled(&c))
            }
            SpaceCodec::Dual { inner, tag } => {
                if !t.dual {
                    return Err(Error::Parse(format!("{at}: terms of {tag} must be marked dual")));
                }
                let v = Self::monomial_vector(inner.space(), &t.mono, at)?;
                let mut it = v.iter();
                match (it.next(), it.next()) {
                    (Some((k, one)), None) if *one == Rational::from_integer(1.into()) => Ok(Vector::term(*k, c)),
                    _ => Err(Error::Parse(format!("{at}: a dual term must name a single basis monomial"))),
                }
            }
            SpaceCodec::Semidirect { base, ideal, .. } => {
                let part = if t.dual { ideal } else { base };
                let v = part.decode_term(t, at)?;
                if t.dual {
                    Ok(Vector::from_terms(v.iter().map(|(k, c)| {
                        (BasisKey::new(k.level, k.index + base.base_dim(k.level)), c.clone())
                    })))
                } else {
                    Ok(v)
                }
            }
        }
    }

    pub fn decode(&self, v: &VecJson, at: &str) -> Result<Vector> {
        let mut out = Vector::zero();
        for (n, t) in v.terms.iter().enumerate() {
            out.add(&self.decode_term(t, &format!("{at}.terms[{n}]"))?);
        }
        Ok(out)
    }

    pub fn encode_key(&self, key: BasisKey) -> Result<VecJson> {
        let mono = |space: &FockSpace, dual: bool| {
            let m = space.basis().monomial(key);
            VecJson {
                terms: vec![VecTerm {
                    mono: m.factors().iter().map(|f| (f.gen, f.mode)).collect(),
                    coeff: "1".into(),
                    dual,
                }],
            }
        };
        match self {
            SpaceCodec::Fock { space, .. } => Ok(mono(space.space(), false)),
            SpaceCodec::Dual { inner, .. } => Ok(mono(inner.space(), true)),
            SpaceCodec::Semidirect { base, ideal, .. } => {
                let d = base.base_dim(key.level);
                if key.index < d {
                    base.encode_key(key)
                } else {
                    ideal.encode_key(BasisKey::new(key.level, key.index - d))
                }
            }
        }
    }

    pub fn encode(&self, v: &Vector) -> Result<VecJson> {
        let mut terms = Vec::new();
        for (k, c) in v.iter() {
            for mut t in self.encode_key(*k)?.terms {
                t.coeff = format_rational(c);
                terms.push(t);
            }
        }
        Ok(VecJson { terms })
    }
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::codec::{SpaceCodec, VecJson};
use crate::error::{Error, Result};
use crate::exact_algebra::{format_rational, parse_rational, BasisKey, LevelwiseMatrix, Matrix, SpaceTag, Vector};
use crate::lie_reduction::LieTensor;
use crate::yang_baxter::{DiagonalTensor, LevelPreservingMap};

pub const TENSOR_KIND: &str = "diagonal_tensor";
pub const MAP_KIND: &str = "lp_map";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub left: VecJson,
    pub right: VecJson,
    pub coeff: String,
}

/// `{"kind":"diagonal_tensor","carrier":..,"levels":{"n":[pairs]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub kind: String,
    pub carrier: String,
    pub levels: BTreeMap<usize, Vec<PairJson>>,
}

/// `{"kind":"lp_map","source":..,"target":..,"degree_shift":d,"levels":{"n":rows}}`
/// with one block per source level, rows indexed by the target basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub kind: String,
    pub source: String,
    pub target: String,
    pub degree_shift: i64,
    pub levels: BTreeMap<usize, Vec<Vec<String>>>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn to_json_string<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

impl TensorFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: TensorFile = parse_json(text, "tensor file")?;
        if f.kind != TENSOR_KIND {
            return Err(Error::Parse(format!("tensor file: kind is '{}', expected '{TENSOR_KIND}'", f.kind)));
        }
        Ok(f)
    }

    fn check_carrier(&self, expected: &str) -> Result<()> {
        if self.carrier != expected {
            return Err(Error::SpaceMismatch { expected: expected.into(), found: self.carrier.clone() });
        }
        Ok(())
    }

    fn entries(&self, codec: &SpaceCodec) -> Result<Vec<(usize, Vector, Vector, crate::exact_algebra::Rational)>> {
        let mut out = Vec::new();
        for (level, pairs) in &self.levels {
            for (n, p) in pairs.iter().enumerate() {
                let at = format!("levels.{level}[{n}]");
                let left = codec.decode(&p.left, &format!("{at}.left"))?;
                let right = codec.decode(&p.right, &format!("{at}.right"))?;
                for (side, v) in [("left", &left), ("right", &right)] {
                    if v.iter().any(|(k, _)| k.level != *level) {
                        return Err(Error::Parse(format!("{at}.{side}: vector is not homogeneous of level {level}")));
                    }
                }
                let c = parse_rational(&p.coeff).map_err(|e| Error::Parse(format!("{at}.coeff: {e}")))?;
                out.push((*level, left, right, c));
            }
        }
        Ok(out)
    }

    /// Decodes a tensor on the space of `codec`, whose tag must match the
    /// carrier.
    pub fn decode(&self, codec: &SpaceCodec) -> Result<DiagonalTensor> {
        self.check_carrier(&codec.tag().0)?;
        let mut r = DiagonalTensor::zero(codec.tag());
        for (_, left, right, c) in self.entries(codec)? {
            r.add_pair(&left, &right, &c)?;
        }
        Ok(r)
    }

    /// Canonical file: one pair of basis vectors per nonzero entry.
    pub fn encode(r: &DiagonalTensor, codec: &SpaceCodec) -> Result<Self> {
        let mut levels: BTreeMap<usize, Vec<PairJson>> = BTreeMap::new();
        for level in r.levels().collect::<Vec<_>>() {
            for (&(i, j), c) in r.level_entries(level) {
                levels.entry(level).or_default().push(PairJson {
                    left: codec.encode_key(BasisKey::new(level, i))?,
                    right: codec.encode_key(BasisKey::new(level, j))?,
                    coeff: format_rational(c),
                });
            }
        }
        Ok(TensorFile { kind: TENSOR_KIND.into(), carrier: r.carrier().0.clone(), levels })
    }

    /// Decodes a degree-one tensor over a Lie algebra carried by the degree-one
    /// subspace of the space of `codec`.
    pub fn decode_lie(&self, codec: &SpaceCodec, carrier: &str, dim: usize) -> Result<LieTensor> {
        self.check_carrier(carrier)?;
        let mut m = Matrix::zeros(dim, dim);
        for (level, left, right, c) in self.entries(codec)? {
            if level != 1 {
                return Err(Error::Parse(format!("levels.{level}: Lie tensors live in degree one")));
            }
            for (a, x) in left.iter() {
                for (b, y) in right.iter() {
                    m.add_to(a.index, b.index, &(&c * x * y));
                }
            }
        }
        LieTensor::new(SpaceTag::new(carrier), m)
    }

    pub fn encode_lie(t: &LieTensor, codec: &SpaceCodec) -> Result<Self> {
        let d = t.dim();
        let mut pairs = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let c = t.matrix.get(i, j);
                if *c != crate::exact_algebra::q(0) {
                    pairs.push(PairJson {
                        left: codec.encode_key(BasisKey::new(1, i))?,
                        right: codec.encode_key(BasisKey::new(1, j))?,
                        coeff: format_rational(c),
                    });
                }
            }
        }
        let mut levels = BTreeMap::new();
        if !pairs.is_empty() {
            levels.insert(1, pairs);
        }
        Ok(TensorFile { kind: TENSOR_KIND.into(), carrier: t.carrier.0.clone(), levels })
    }
}

impl MapFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: MapFile = parse_json(text, "map file")?;
        if f.kind != MAP_KIND {
            return Err(Error::Parse(format!("map file: kind is '{}', expected '{MAP_KIND}'", f.kind)));
        }
        Ok(f)
    }

    /// Decodes the map, checking tags and block shapes against the given
    /// spaces.
    pub fn decode(
        &self,
        source: &SpaceTag,
        target: &SpaceTag,
        source_dim: impl Fn(usize) -> usize,
        target_dim: impl Fn(usize) -> usize,
    ) -> Result<LevelPreservingMap> {
        for (found, expected) in [(&self.source, source), (&self.target, target)] {
            if *found != expected.0 {
                return Err(Error::SpaceMismatch { expected: expected.0.clone(), found: found.clone() });
            }
        }
        let mut m = LevelwiseMatrix::new(self.degree_shift);
        for (level, rows) in &self.levels {
            let at = format!("levels.{level}");
            let tl = *level as i64 + self.degree_shift;
            if tl < 0 {
                return Err(Error::Parse(format!("{at}: target level {tl} is negative")));
            }
            let parsed = rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, c)| parse_rational(c).map_err(|e| Error::Parse(format!("{at}[{i}][{j}]: {e}"))))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let (rows_expected, cols_expected) = (target_dim(tl as usize), source_dim(*level));
            if parsed.len() != rows_expected || parsed.iter().any(|r| r.len() != cols_expected) {
                return Err(Error::Parse(format!("{at}: expected a {rows_expected}x{cols_expected} block")));
            }
            let block = if rows_expected == 0 { Matrix::zeros(0, cols_expected) } else { Matrix::from_rows(parsed)? };
            m.set_block(*level, block);
        }
        Ok(LevelPreservingMap::new(source.clone(), target.clone(), m))
    }

    pub fn encode(t: &LevelPreservingMap) -> Self {
        let canonical = t.matrix.canonical();
        let levels = canonical
            .blocks()
            .map(|(l, b)| (*l, (0..b.rows()).map(|i| b.row(i).iter().map(format_rational).collect()).collect()))
            .collect();
        MapFile {
            kind: MAP_KIND.into(),
            source: t.source.0.clone(),
            target: t.target.0.clone(),
            degree_shift: t.degree_shift(),
            levels,
        }
    }

    /// A Lie map `W(1) -> g` in the same format, stored at level 1.
    pub fn encode_matrix(m: &Matrix, source: &str, target: &str) -> Self {
        let rows = (0..m.rows()).map(|i| m.row(i).iter().map(format_rational).collect()).collect();
        MapFile {
            kind: MAP_KIND.into(),
            source: source.into(),
            target: target.into(),
            degree_shift: 0,
            levels: BTreeMap::from([(1, rows)]),
        }
    }
}

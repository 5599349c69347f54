use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{BasisKey, Rational, Vector};
use crate::error::{Error, Result};

/// Dense exact matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scaled(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn plus(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn minus(&self, other: &Matrix) -> Result<Matrix> {
        self.plus(&other.scaled(&-Rational::one()))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Rank by fraction-exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else { continue };
            m.swap_rows(p, rank);
            let pivot = m.get(rank, col).clone();
            for r in 0..m.rows {
                if r != rank && !m.get(r, col).is_zero() {
                    let f = m.get(r, col) / &pivot;
                    for c in col..m.cols {
                        let v = m.get(rank, c) * &f;
                        m.data[r * m.cols + c] -= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pivot_inv = Rational::one() / a.get(col, col);
            for c in 0..n {
                let x = a.get(col, c) * &pivot_inv;
                a.set(col, c, x);
                let y = inv.get(col, c) * &pivot_inv;
                inv.set(col, c, y);
            }
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    for c in 0..n {
                        let x = a.get(col, c) * &f;
                        a.data[r * n + c] -= x;
                        let y = inv.get(col, c) * &f;
                        inv.data[r * n + c] -= y;
                    }
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// A degree-shift-`d` family of blocks: the block stored under source level
/// `n` maps the basis of level `n` to the basis of level `n + d`. Rows index
/// the target basis and columns the source basis. Missing blocks are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelwiseMatrix {
    shift: i64,
    blocks: BTreeMap<usize, Matrix>,
}

impl LevelwiseMatrix {
    pub fn new(shift: i64) -> Self {
        LevelwiseMatrix { shift, blocks: BTreeMap::new() }
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn set_block(&mut self, source_level: usize, block: Matrix) {
        self.blocks.insert(source_level, block);
    }

    pub fn block(&self, source_level: usize) -> Option<&Matrix> {
        self.blocks.get(&source_level)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&usize, &Matrix)> {
        self.blocks.iter()
    }

    pub fn target_level(&self, source_level: usize) -> Option<usize> {
        let t = source_level as i64 + self.shift;
        (t >= 0).then_some(t as usize)
    }

    /// Checks every block against the cached level dimensions.
    pub fn check_shapes(&self, source_dim: impl Fn(usize) -> usize, target_dim: impl Fn(usize) -> usize) -> Result<()> {
        for (&n, b) in &self.blocks {
            let Some(t) = self.target_level(n) else {
                if b.is_zero() {
                    continue;
                }
                return Err(Error::Shape(format!("block at level {n} targets a negative level")));
            };
            if b.cols() != source_dim(n) || b.rows() != target_dim(t) {
                return Err(Error::Shape(format!(
                    "block at level {n} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    target_dim(t),
                    source_dim(n)
                )));
            }
        }
        Ok(())
    }

    pub fn apply_basis(&self, key: BasisKey) -> Vector {
        let mut out = Vector::zero();
        let (Some(b), Some(t)) = (self.blocks.get(&key.level), self.target_level(key.level)) else {
            return out;
        };
        for r in 0..b.rows() {
            out.add_term(BasisKey::new(t, r), b.get(r, key.index).clone());
        }
        out
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (k, c) in v.iter() {
            out.add_scaled(&self.apply_basis(*k), c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    /// Drops all-zero blocks so that equality is structural.
    pub fn canonical(&self) -> LevelwiseMatrix {
        LevelwiseMatrix {
            shift: self.shift,
            blocks: self.blocks.iter().filter(|(_, b)| !b.is_zero()).map(|(k, b)| (*k, b.clone())).collect(),
        }
    }
}

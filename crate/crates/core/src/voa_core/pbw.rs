use std::collections::HashMap;

use crate::exact_algebra::BasisKey;

/// One creation factor `x_gen(mode)` with `mode <= -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub gen: usize,
    pub mode: i64,
}

impl Factor {
    pub fn new(gen: usize, mode: i64) -> Self {
        Factor { gen, mode }
    }

    /// Sort key of the normal order: mode descending, then generator.
    pub fn order_key(&self) -> (i64, usize) {
        (-self.mode, self.gen)
    }
}

/// Normally ordered creation monomial applied to a top vector; the leftmost
/// factor acts last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<Factor>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|f| (-f.mode) as usize).sum()
    }

    pub fn is_normal(&self) -> bool {
        self.0.iter().all(|f| f.mode <= -1) && self.0.windows(2).all(|w| w[0].order_key() <= w[1].order_key())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }
}

/// Per-level PBW basis of a Fock-type space with `rank` generators.
#[derive(Debug, Clone)]
pub struct PbwBasis {
    rank: usize,
    levels: Vec<Vec<Monomial>>,
    index: HashMap<Monomial, BasisKey>,
}

impl PbwBasis {
    pub fn new(rank: usize, max_degree: usize) -> Self {
        let mut levels = Vec::with_capacity(max_degree + 1);
        let mut index = HashMap::new();
        for n in 0..=max_degree {
            let mut monos = Vec::new();
            let mut current = Vec::new();
            enumerate(rank, n, (1, 0), &mut current, &mut monos);
            monos.sort_by(|a: &Monomial, b: &Monomial| {
                let ka: Vec<_> = a.0.iter().map(Factor::order_key).collect();
                let kb: Vec<_> = b.0.iter().map(Factor::order_key).collect();
                ka.cmp(&kb)
            });
            for (i, m) in monos.iter().enumerate() {
                index.insert(m.clone(), BasisKey::new(n, i));
            }
            levels.push(monos);
        }
        PbwBasis { rank, levels, index }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dim(&self, level: usize) -> usize {
        self.levels.get(level).map_or(0, Vec::len)
    }

    pub fn monomial(&self, key: BasisKey) -> &Monomial {
        &self.levels[key.level][key.index]
    }

    pub fn key(&self, mono: &Monomial) -> Option<BasisKey> {
        self.index.get(mono).copied()
    }

    pub fn level(&self, n: usize) -> &[Monomial] {
        &self.levels[n]
    }
}

fn enumerate(rank: usize, remaining: usize, min_key: (i64, usize), current: &mut Vec<Factor>, out: &mut Vec<Monomial>) {
    if remaining == 0 {
        out.push(Monomial(current.clone()));
        return;
    }
    for depth in min_key.0..=remaining as i64 {
        let first_gen = if depth == min_key.0 { min_key.1 } else { 0 };
        for gen in first_gen..rank {
            current.push(Factor::new(gen, -depth));
            enumerate(rank, remaining - depth as usize, (depth, gen), current, out);
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_dimensions_are_partition_counts() {
        let b = PbwBasis::new(1, 6);
        let dims: Vec<usize> = (0..=6).map(|n| b.dim(n)).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn rank_three_low_levels() {
        let b = PbwBasis::new(3, 3);
        assert_eq!((b.dim(1), b.dim(2), b.dim(3)), (3, 9, 22));
    }

    #[test]
    fn monomials_are_normal_and_indexed() {
        let b = PbwBasis::new(2, 4);
        for n in 0..=4 {
            for (i, m) in b.level(n).iter().enumerate() {
                assert!(m.is_normal());
                assert_eq!(m.degree(), n);
                assert_eq!(b.key(m), Some(BasisKey::new(n, i)));
            }
        }
        let level2 = b.level(2);
        assert_eq!(level2[0].0, vec![Factor::new(0, -1), Factor::new(0, -1)]);
    }
}

//! Sparse exact linear algebra over a [`Field`]: an incremental row-echelon
//! basis that can also express vectors in terms of the inserted generators.

use std::collections::BTreeMap;

use crate::algebra::field::Field;

pub type SparseVec<C> = BTreeMap<usize, C>;

fn axpy<C: Field>(y: &mut SparseVec<C>, a: &C, x: &SparseVec<C>) {
    // y -= a * x
    for (k, v) in x {
        let d = a.clone() * v.clone();
        match y.get_mut(k) {
            Some(e) => {
                *e -= &d;
                if e.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                y.insert(*k, -d);
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Row<C: Field> {
    vec: SparseVec<C>,
    combo: SparseVec<C>,
}

/// Echelon basis with distinct leading indices. Each stored row remembers
/// which combination of inserted generators produced it.
#[derive(Clone, Debug)]
pub struct Echelon<C: Field> {
    rows: BTreeMap<usize, Row<C>>,
    track: bool,
}

impl<C: Field> Echelon<C> {
    pub fn new(track: bool) -> Self {
        Echelon {
            rows: BTreeMap::new(),
            track,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Leading-term reduction. Returns the residual and the combination of
    /// generators subtracted from `v`.
    fn reduce(&self, mut v: SparseVec<C>) -> (SparseVec<C>, SparseVec<C>) {
        let mut used = SparseVec::new();
        while let Some((&lead, c)) = v.iter().next() {
            let Some(row) = self.rows.get(&lead) else {
                break;
            };
            let c = c.clone();
            axpy(&mut v, &c, &row.vec);
            if self.track {
                axpy(&mut used, &-c, &row.combo);
            }
        }
        (v, used)
    }

    /// Adds generator number `tag`. Returns whether it raised the rank.
    pub fn insert(&mut self, v: SparseVec<C>, tag: usize) -> bool {
        let (mut r, used) = self.reduce(v);
        let Some((&lead, lc)) = r.iter().next() else {
            return false;
        };
        let inv = lc.inv();
        for x in r.values_mut() {
            *x *= &inv;
        }
        let mut combo = SparseVec::new();
        if self.track {
            // r = g_tag - used
            combo.insert(tag, C::one());
            axpy(&mut combo, &C::one(), &used);
            for x in combo.values_mut() {
                *x *= &inv;
            }
            combo.retain(|_, x| !x.is_zero());
        }
        self.rows.insert(lead, Row { vec: r, combo });
        true
    }

    pub fn contains(&self, v: SparseVec<C>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coefficients `a` with `v = Σ a_tag · g_tag`, if `v` lies in the span.
    /// Requires tracking.
    pub fn express(&self, v: SparseVec<C>) -> Option<SparseVec<C>> {
        assert!(self.track, "express needs a tracking basis");
        let (r, used) = self.reduce(v);
        r.is_empty().then_some(used)
    }
}

/// Rank of a dense matrix.
pub fn rank<C: Field>(rows: &[Vec<C>]) -> usize {
    let mut e = Echelon::new(false);
    for (i, r) in rows.iter().enumerate() {
        let v: SparseVec<C> = r
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        e.insert(v, i);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat, Rational};

    fn sv(v: &[i64]) -> SparseVec<Rational> {
        v.iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .map(|(i, x)| (i, int(*x)))
            .collect()
    }

    #[test]
    fn expresses_in_generators() {
        let mut e = Echelon::new(true);
        assert!(e.insert(sv(&[1, 1]), 0));
        assert!(e.insert(sv(&[1, -1]), 1));
        assert!(!e.insert(sv(&[3, 1]), 2));
        let a = e.express(sv(&[1, 0])).unwrap();
        assert_eq!(a.get(&0), Some(&rat(1, 2)));
        assert_eq!(a.get(&1), Some(&rat(1, 2)));
    }

    #[test]
    fn rank_of_singular_matrix() {
        let m: Vec<Vec<Rational>> = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn membership() {
        let mut e = Echelon::new(false);
        e.insert(sv(&[0, 1, 1]), 0);
        assert!(e.contains(sv(&[0, 2, 2])));
        assert!(!e.contains(sv(&[1, 0, 0])));
    }
}

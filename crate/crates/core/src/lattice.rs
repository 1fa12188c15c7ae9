//! Integer lattice utilities: unimodular matrices, basis completion with
//! entry bounds, Bézout pairs, and ordered enumeration by row-sum norm.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::rational::Rational;
use crate::error::{Error, Result};

/// An integer matrix with determinant ±1 and its (integer) inverse.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    rows: Vec<Vec<i64>>,
    inv: Vec<Vec<i64>>,
    det: i64,
}

/// Exact determinant by Bareiss elimination.
pub fn det_i64(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Small-matrix determinant in machine integers (entries are tiny during
/// enumeration).
fn det_small(m: &[Vec<i64>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0] as i128,
        2 => m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128,
        3 => {
            let a = |i: usize, j: usize| m[i][j] as i128;
            a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
        }
        _ => det_i64(m).to_i128().unwrap_or(i128::MAX),
    }
}

fn integer_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = m[i].iter().map(|&x| Rational::from_integer(x.into())).collect();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..2 * n {
                    let v = &a[c][k] * &f;
                    a[r][k] -= v;
                }
            }
        }
    }
    a.iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
                .collect()
        })
        .collect()
}

impl UnimodularMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix must be square and nonempty"));
        }
        let d = det_i64(&rows);
        if d.abs() != BigInt::one() {
            return Err(Error::invalid(format!("determinant {d} is not ±1")));
        }
        let inv = integer_inverse(&rows)
            .ok_or_else(|| Error::invalid("inverse entries overflow machine integers"))?;
        Ok(UnimodularMatrix {
            rows,
            inv,
            det: d.to_i64().expect("±1"),
        })
    }

    pub fn identity(n: usize) -> Self {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        UnimodularMatrix {
            inv: rows.clone(),
            rows,
            det: 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn inverse(&self) -> &[Vec<i64>] {
        &self.inv
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> i64 {
        norm_inf(&self.rows)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &UnimodularMatrix) -> Result<UnimodularMatrix> {
        let n = self.dim();
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = 0;
                for k in 0..n {
                    acc += self.rows[i][k] as i128 * other.rows[k][j] as i128;
                }
                rows[i][j] = i64::try_from(acc)
                    .map_err(|_| Error::resource("matrix product overflows"))?;
            }
        }
        UnimodularMatrix::new(rows)
    }

    /// The block matrix `I_k ⊕ self`.
    pub fn pad_identity(&self, k: usize) -> UnimodularMatrix {
        let n = self.dim() + k;
        let mut rows = vec![vec![0i64; n]; n];
        let mut inv = vec![vec![0i64; n]; n];
        for i in 0..k {
            rows[i][i] = 1;
            inv[i][i] = 1;
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                rows[k + i][k + j] = self.rows[i][j];
                inv[k + i][k + j] = self.inv[i][j];
            }
        }
        UnimodularMatrix {
            rows,
            inv,
            det: self.det,
        }
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join("\n"))
    }
}

impl fmt::Debug for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

pub fn norm_inf(rows: &[Vec<i64>]) -> i64 {
    rows.iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<i64>())
        .max()
        .unwrap_or(0)
}

/// Minimal solution of `n1 a + n2 b = 1`: smallest `|a|`, positive `a` on
/// ties. Then `|a| ≤ |n2|` and `|b| ≤ |n1|` whenever both are nonzero.
pub fn bezout_pair(n1: i64, n2: i64) -> Result<(i64, i64)> {
    if n1 == 0 && n2 == 0 {
        return Err(Error::invalid("bezout_pair of (0, 0)"));
    }
    let g = n1.gcd(&n2);
    if g != 1 {
        return Err(Error::invalid(format!("gcd({n1}, {n2}) = {g}, not 1")));
    }
    if n2 == 0 {
        return Ok((n1, 0));
    }
    if n1 == 0 {
        return Ok((0, n2));
    }
    let e = (n1 as i128).extended_gcd(&(n2 as i128));
    // e.x * n1 + e.y * n2 = 1; shift along (n2, -n1) to minimise |a|.
    let step = (n2 as i128).abs();
    let mut a = e.x.rem_euclid(step);
    // Positive representative wins an exact tie.
    if 2 * a > step {
        a -= step;
    }
    let b = (1 - n1 as i128 * a) / n2 as i128;
    debug_assert_eq!(n1 as i128 * a + n2 as i128 * b, 1);
    Ok((a as i64, b as i64))
}

/// Completes a primitive vector `m` to a unimodular matrix with first row
/// `m` and every other entry bounded by `|v_ij| ≤ max(|m_j|, 1)`.
///
/// Construction: write `m = (g·m', m_n)` with `m'` primitive, complete `m'`
/// recursively to rows `(m', w_2, ..., w_{n-1})`, pick `c, d` with
/// `d·g − c·m_n = ±1`, `|d| ≤ |m_n|`, `|c| ≤ g`, and use the rows
/// `(g·m', m_n)`, `(c·m', d)`, `(w_i, 0)`.
pub fn extend_to_basis(m: &[i64]) -> Result<UnimodularMatrix> {
    if m.is_empty() || m.iter().all(|&x| x == 0) {
        return Err(Error::invalid("vector must be nonzero"));
    }
    let g = m.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g != 1 {
        return Err(Error::invalid(format!(
            "entries have gcd {g}; divide it out first"
        )));
    }
    UnimodularMatrix::new(complete(m))
}

fn complete(m: &[i64]) -> Vec<Vec<i64>> {
    let n = m.len();
    if n == 1 {
        return vec![m.to_vec()];
    }
    let head = &m[..n - 1];
    let last = m[n - 1];
    let g = head.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    let mut rows = vec![m.to_vec()];
    if g == 0 {
        // m = (0, ..., 0, ±1)
        for i in 0..n - 1 {
            let mut r = vec![0; n];
            r[i] = 1;
            rows.push(r);
        }
        return rows;
    }
    let prim: Vec<i64> = head.iter().map(|x| x / g).collect();
    let sub = complete(&prim);
    let (c, d) = small_bezout(g, last);
    let mut second: Vec<i64> = prim.iter().map(|x| c * x).collect();
    second.push(d);
    rows.push(second);
    for w in sub.into_iter().skip(1) {
        let mut r = w;
        r.push(0);
        rows.push(r);
    }
    rows
}

/// `(c, d)` with `d·g − c·mn = ±1`, minimal `|d|` (positive on ties), then
/// minimal `|c|`.
fn small_bezout(g: i64, mn: i64) -> (i64, i64) {
    if mn == 0 {
        return (0, 1);
    }
    let lim = mn.abs();
    for ad in 0..=lim {
        for d in [ad, -ad] {
            for s in [1i64, -1] {
                let num = d as i128 * g as i128 - s as i128;
                if num % mn as i128 == 0 {
                    let c = (num / mn as i128) as i64;
                    return (c, d);
                }
            }
            if ad == 0 {
                break;
            }
        }
    }
    unreachable!("gcd(g, m_n) = 1 guarantees a solution")
}

/// All unimodular `n×n` matrices with `‖A‖∞ ≤ bound`, ordered by the norm
/// and then row-major lexicographically. Lazy.
pub struct UnimodularEnumerator {
    n: usize,
    bound: i64,
    norm: i64,
    vectors: Vec<Vec<i64>>,
    idx: Vec<usize>,
    done: bool,
}

impl UnimodularEnumerator {
    pub fn new(n: usize, bound: i64) -> Self {
        let mut e = UnimodularEnumerator {
            n,
            bound,
            norm: 0,
            vectors: Vec::new(),
            idx: Vec::new(),
            done: n == 0,
        };
        e.advance_norm();
        e
    }

    fn advance_norm(&mut self) {
        self.norm += 1;
        if self.norm > self.bound {
            self.done = true;
            return;
        }
        self.vectors = vectors_with_l1_at_most(self.n, self.norm);
        self.idx = vec![0; self.n];
    }

    fn step_index(&mut self) -> bool {
        let len = self.vectors.len();
        for i in (0..self.n).rev() {
            if self.idx[i] + 1 < len {
                self.idx[i] += 1;
                for j in i + 1..self.n {
                    self.idx[j] = 0;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for UnimodularEnumerator {
    type Item = UnimodularMatrix;

    fn next(&mut self) -> Option<UnimodularMatrix> {
        while !self.done {
            let rows: Vec<Vec<i64>> = self.idx.iter().map(|&i| self.vectors[i].clone()).collect();
            let has_norm = norm_inf(&rows) == self.norm;
            if !self.step_index() {
                self.advance_norm();
            }
            if has_norm && det_small(&rows).abs() == 1 {
                return UnimodularMatrix::new(rows).ok();
            }
        }
        None
    }
}

fn vectors_with_l1_at_most(n: usize, k: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, k: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let used: i64 = prefix.iter().map(|x| x.abs()).sum();
        let left = k - used;
        for v in -left..=left {
            prefix.push(v);
            rec(n, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

//! Sparse multivariate polynomials over a coefficient field.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors. The "leading" term
//! everywhere in this crate means the largest monomial in graded
//! lexicographic order with `x0 > x1 > ...`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::field::Field;
use super::rational::Rational;
use super::ratfunc::RatFunc;
use super::upoly::UniPoly;
use crate::error::{Error, Result};

pub type Monomial = Vec<u32>;

/// Polynomials over ℚ.
pub type QPoly = MultiPoly<Rational>;
/// Polynomials over ℚ(t).
pub type KPoly = MultiPoly<RatFunc>;

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<C: Field> {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, C>,
}

/// Graded lexicographic comparison of exponent vectors.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// All exponent vectors of total degree `d` in `n` variables, grlex
/// descending (so `x0^d` first).
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl<C: Field> MultiPoly<C> {
    pub fn zero(vars: Vec<String>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: C) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn one(vars: Vec<String>) -> Self {
        Self::constant(vars, C::one())
    }

    /// The variable with index `i`.
    pub fn var(vars: Vec<String>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, C::one())
    }

    pub fn monomial(vars: Vec<String>, exp: Monomial, c: C) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent length mismatch");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: Monomial, c: C) {
        assert_eq!(exp.len(), self.vars.len(), "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    /// Terms in descending graded lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex(b.0, a.0));
        v
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<C> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(C::zero))
    }

    pub fn coeff(&self, exp: &[u32]) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }

    /// Indices of variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Distinct total degrees occurring, ascending.
    pub fn degrees_present(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn lead(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    pub fn lead_coeff(&self) -> C {
        self.lead().map(|(_, c)| c.clone()).unwrap_or_else(C::zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &[u32]) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.iter().zip(exp).map(|(x, y)| x + y).collect(), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to variable `i` (coefficients are
    /// treated as constants).
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c.clone() * C::from_i64(e[i] as i64));
        }
        out
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Views the polynomial as univariate in variable `i`: entry `k` is the
    /// coefficient of `x_i^k`, a polynomial in the same variable list with
    /// `x_i` absent.
    pub fn coeffs_in(&self, i: usize) -> Vec<Self> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Self::zero(self.vars.clone()); d + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut f = e.clone();
            f[i] = 0;
            out[k].terms.insert(f, c.clone());
        }
        out
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(vars: Vec<String>, i: usize, coeffs: &[Self]) -> Self {
        let mut out = Self::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut f = e.clone();
                f[i] += k as u32;
                out.add_term(f, a.clone());
            }
        }
        out
    }

    /// Leading coefficient with respect to variable `i`.
    pub fn lc_in(&self, i: usize) -> Self {
        self.coeffs_in(i)
            .pop()
            .unwrap_or_else(|| Self::zero(self.vars.clone()))
    }

    /// Substitutes the constant `v` for variable `i` (the variable stays in
    /// the variable list with degree zero).
    pub fn subst_value(&self, i: usize, v: &C) -> Self {
        let mut out = Self::zero(self.vars.clone());
        let mut powers: Vec<C> = vec![C::one()];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().clone() * v.clone();
                powers.push(next);
            }
            let mut f = e.clone();
            f[i] = 0;
            out.add_term(f, c.clone() * powers[k].clone());
        }
        out
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars());
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes polynomial `images[i]` for each variable `i`. All images
    /// share one variable list, which becomes the result's.
    pub fn substitute(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.nvars());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_default();
        let mut cache: Vec<Vec<Self>> = vec![vec![Self::one(target.clone())]; images.len()];
        let mut out = Self::zero(target.clone());
        for (e, c) in &self.terms {
            let mut t = Self::constant(target.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Re-expresses the polynomial over `new_vars`, which must contain every
    /// variable that occurs.
    pub fn with_vars(&self, new_vars: &[String]) -> Result<Self> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| new_vars.iter().position(|w| w == v))
            .collect();
        let mut out = Self::zero(new_vars.to_vec());
        for (e, c) in &self.terms {
            let mut f = vec![0; new_vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => f[j] += k,
                    None => {
                        return Err(Error::invalid(format!(
                            "variable {} is not among {:?}",
                            self.vars[i], new_vars
                        )))
                    }
                }
            }
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    /// Drops variables that do not occur (keeps at least the given order).
    pub fn compact_vars(&self) -> Self {
        let used = self.used_vars();
        let names: Vec<String> = used.iter().map(|&i| self.vars[i].clone()).collect();
        self.with_vars(&names).expect("used variables are kept")
    }

    /// Renames variables positionally.
    pub fn rename(&self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.vars.len());
        MultiPoly {
            vars: names,
            terms: self.terms.clone(),
        }
    }

    /// Componentwise minimum exponent (the largest monomial dividing `self`).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars()];
        };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    pub fn has_monomial_factor(&self) -> bool {
        !self.is_zero() && self.monomial_content().iter().any(|&e| e > 0)
    }

    /// Divides out the monomial content.
    pub fn strip_monomial(&self) -> (Monomial, Self) {
        let m = self.monomial_content();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(&m).map(|(a, b)| a - b).collect(), c.clone()))
            .collect();
        (
            m,
            MultiPoly {
                vars: self.vars.clone(),
                terms,
            },
        )
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        assert_eq!(self.vars, d.vars, "variable lists differ");
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.inv()));
        }
        let (dl, dc) = d.lead().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let dinv = dc.inv();
        let mut r = self.clone();
        let mut q = Self::zero(self.vars.clone());
        while let Some((rl, rc)) = r.lead().map(|(e, c)| (e.clone(), c.clone())) {
            if rl.iter().zip(&dl).any(|(a, b)| a < b) {
                return None;
            }
            let e: Monomial = rl.iter().zip(&dl).map(|(a, b)| a - b).collect();
            let c = rc * dinv.clone();
            for (de, dcoef) in &d.terms {
                let f: Monomial = de.iter().zip(&e).map(|(a, b)| a + b).collect();
                r.add_term(f, -(dcoef.clone() * c.clone()));
            }
            q.add_term(e, c);
        }
        Some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Canonical scalar multiple: integral, primitive, positive leading
    /// coefficient. Zero stays zero.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<&C> = self.terms.values().collect();
        let u = C::normalizer(&coeffs, &self.lead_coeff());
        self.scale(&u)
    }

    /// Inserts a homogenizing variable named `name` at position `pos`.
    pub fn homogenize(&self, name: &str, pos: usize) -> Self {
        let d = self.total_degree();
        let mut vars = self.vars.clone();
        vars.insert(pos, name.to_string());
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.insert(pos, d - e.iter().sum::<u32>());
            out.add_term(f, c.clone());
        }
        out
    }

    /// Sets variable `i` to 1 and removes it from the variable list.
    pub fn dehomogenize(&self, i: usize) -> Self {
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.remove(i);
            out.add_term(f, c.clone());
        }
        out
    }

    /// Specializes the parameter at `t = z`; `None` if a coefficient has a
    /// pole there.
    pub fn eval_param(&self, z: &Rational) -> Option<QPoly> {
        let mut out = QPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.eval_param(z)?);
        }
        Some(out)
    }

    pub fn involves_param(&self) -> bool {
        self.terms.values().any(|c| c.has_param())
    }

    pub fn to_ratfunc_poly(&self) -> KPoly {
        self.map_coeffs(|c| c.to_ratfunc())
    }

    /// Whether the polynomial is a single term.
    pub fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        self.rename(vars.to_vec()).to_string()
    }
}

impl KPoly {
    /// Clears ℚ(t)-denominators and turns `t` into an extra, last variable
    /// named `t_name`. The result is a ℚ(t)-multiple of `self`.
    pub fn lift_t(&self, t_name: &str) -> QPoly {
        let n = self.normalize();
        let mut vars = self.vars.clone();
        vars.push(t_name.to_string());
        let mut out = QPoly::zero(vars);
        for (e, c) in &n.terms {
            debug_assert!(c.is_polynomial());
            for (k, a) in c.num().coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut f = e.clone();
                f.push(k as u32);
                out.add_term(f, a.clone());
            }
        }
        out
    }

    /// Inverse of [`lift_t`](Self::lift_t): variable `t_index` becomes the
    /// coefficient parameter.
    pub fn unlift_t(p: &QPoly, t_index: usize) -> KPoly {
        let mut vars = p.vars.clone();
        vars.remove(t_index);
        let mut acc: BTreeMap<Monomial, Vec<(usize, Rational)>> = BTreeMap::new();
        for (e, c) in &p.terms {
            let mut f = e.clone();
            let k = f.remove(t_index) as usize;
            acc.entry(f).or_default().push((k, c.clone()));
        }
        let mut out = KPoly::zero(vars);
        for (e, list) in acc {
            let d = list.iter().map(|(k, _)| *k).max().unwrap_or(0);
            let mut v = vec![Rational::zero(); d + 1];
            for (k, c) in list {
                v[k] += c;
            }
            out.add_term(e, RatFunc::from_poly(UniPoly::new(v)));
        }
        out
    }

    /// Whether any coefficient involves `t`.
    pub fn has_parameter(&self) -> bool {
        self.terms.values().any(|c| c.as_constant().is_none())
    }

    /// The polynomial over ℚ, if all coefficients are rational constants.
    pub fn to_rational(&self) -> Option<QPoly> {
        let mut out = QPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.as_constant()?);
        }
        Some(out)
    }

    /// Substitutes `t = tau`; `None` at a pole of some coefficient.
    pub fn eval_t(&self, tau: &Rational) -> Option<QPoly> {
        let mut out = QPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.eval(tau)?);
        }
        Some(out)
    }
}

impl QPoly {
    pub fn to_kpoly(&self) -> KPoly {
        self.map_coeffs(|c| RatFunc::constant(c.clone()))
    }

    pub fn from_ints(vars: Vec<String>, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            vars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), Rational::from_integer((*c).into()))),
        )
    }
}

impl<C: Field> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (e, c) in self.sorted_terms() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], k)
                    }
                })
                .collect();
            let mono = mono.join("*");
            let (neg, text) = c.signed_text();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if c.is_compound() && !mono.is_empty() && text.contains([' ', '/']) {
                if text.starts_with('(') && text.contains(")/(") {
                    text
                } else {
                    format!("({text})")
                }
            } else {
                text
            };
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if coeff == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&mono);
            }
        }
        f.write_str(&out)
    }
}

impl<C: Field> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars.join(","), self)
    }
}

impl<'a, C: Field> Add<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Field> Sub<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a, C: Field> Mul<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let prod = c1.clone() * c2.clone();
                match acc.entry(e) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += &prod;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly {
            vars: self.vars.clone(),
            terms: acc,
        }
    }
}

impl<C: Field> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl<C: Field> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<C: Field> $tr for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// Product of a list of polynomials over a shared variable list.
pub fn product<C: Field>(vars: &[String], items: &[MultiPoly<C>]) -> MultiPoly<C> {
    items
        .iter()
        .fold(MultiPoly::one(vars.to_vec()), |acc, p| &acc * p)
}

//! Factorization into irreducibles over ℚ and ℚ(t).
//!
//! Multivariate inputs are reduced to univariate ones by the Kronecker
//! substitution `x_i ↦ y^(B_i)` with mixed-radix bases `B_i` larger than the
//! degree in each variable; true factors are recovered by trying products of
//! univariate factors in order of increasing subset size.

pub mod modp;
pub mod zassenhaus;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::gcd::{content_in, squarefree_q};
use super::mpoly::{grlex, MultiPoly, QPoly};
use super::rational::{denominator_lcm, numerator_gcd, Rational};
use super::upoly::UniPoly;
use crate::error::{Error, Result};
use zassenhaus::ZPoly;

pub const DEFAULT_DEGREE_CAP: u32 = 24;

/// Largest univariate degree produced by the Kronecker substitution.
const KRONECKER_DEGREE_LIMIT: u64 = 1200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<C: Field> {
    pub unit: C,
    pub factors: Vec<(MultiPoly<C>, u32)>,
}

impl<C: Field> Factorization<C> {
    /// `unit * Π f^m`.
    pub fn expand(&self, vars: &[String]) -> MultiPoly<C> {
        let mut acc = MultiPoly::constant(vars.to_vec(), self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

/// Ordering of factors: total degree, then leading monomial, then text.
pub fn factor_order<C: Field>(a: &MultiPoly<C>, b: &MultiPoly<C>) -> Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| {
            let la = a.lead().map(|(e, _)| e.clone()).unwrap_or_default();
            let lb = b.lead().map(|(e, _)| e.clone()).unwrap_or_default();
            grlex(&lb, &la)
        })
        .then_with(|| a.num_terms().cmp(&b.num_terms()))
        .then_with(|| a.to_string().cmp(&b.to_string()))
}

pub fn factorize<C: Field>(p: &MultiPoly<C>) -> Result<Factorization<C>> {
    factorize_with_cap(p, DEFAULT_DEGREE_CAP)
}

pub fn factorize_with_cap<C: Field>(p: &MultiPoly<C>, cap: u32) -> Result<Factorization<C>> {
    if p.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    let lifted = C::lift_poly(p);
    // Univariate input needs no Kronecker substitution.
    if lifted.used_vars().len() > 1 && p.total_degree() > cap {
        return Err(Error::resource(format!(
            "total degree {} exceeds the factorization cap {cap}",
            p.total_degree()
        )));
    }
    let mut factors: Vec<(MultiPoly<C>, u32)> = Vec::new();
    for (f, m) in factor_q(&lifted)? {
        let g = C::unlift_poly(&f, p.nvars()).normalize();
        if g.is_constant() {
            continue;
        }
        factors.push((g, m));
    }
    factors.sort_by(|a, b| factor_order(&a.0, &b.0));
    let mut expanded = MultiPoly::one(p.vars().to_vec());
    for (f, m) in &factors {
        expanded = &expanded * &f.pow(*m);
    }
    let unit = p.lead_coeff() / expanded.lead_coeff();
    Ok(Factorization { unit, factors })
}

/// Irreducible factors with multiplicity, each normalized, over ℚ.
pub fn factor_q(p: &QPoly) -> Result<Vec<(QPoly, u32)>> {
    let vars = p.vars().to_vec();
    let mut out = Vec::new();
    let (mono, stripped) = p.strip_monomial();
    for (i, &e) in mono.iter().enumerate() {
        if e > 0 {
            out.push((QPoly::var(vars.clone(), i), e));
        }
    }
    let mut rest = stripped.normalize();
    if rest.is_constant() {
        return Ok(out);
    }
    let sq = squarefree_q(&rest);
    for g in factor_squarefree_q(&sq)? {
        let mut m = 0;
        while let Some(q) = rest.div_exact(&g) {
            rest = q;
            m += 1;
        }
        debug_assert!(m > 0);
        out.push((g, m));
    }
    Ok(out)
}

fn factor_squarefree_q(s: &QPoly) -> Result<Vec<QPoly>> {
    let s = s.normalize();
    if s.is_constant() {
        return Ok(Vec::new());
    }
    let used = s.used_vars();
    if used.len() == 1 {
        return Ok(factor_univariate_in(&s, used[0]));
    }
    for &v in &used {
        let c = content_in(&s, v);
        if !c.is_constant() {
            let mut out = factor_squarefree_q(&c)?;
            out.extend(factor_squarefree_q(&s.div_exact(&c).expect("content divides"))?);
            return Ok(out);
        }
    }
    if s.is_homogeneous() {
        let w = *used.last().unwrap();
        let d = s.subst_value(w, &Rational::one());
        let mut out = Vec::new();
        for f in factor_squarefree_q(&d)? {
            out.push(rehomogenize(&f, w));
        }
        return Ok(out);
    }
    kronecker(&s, &used)
}

/// Multiplies each term by the power of `x_w` making it of top degree.
fn rehomogenize(f: &QPoly, w: usize) -> QPoly {
    let d = f.total_degree();
    let mut out = QPoly::zero(f.vars().to_vec());
    for (e, c) in f.terms() {
        let mut g = e.clone();
        g[w] += d - e.iter().sum::<u32>();
        out.add_term(g, c.clone());
    }
    out.normalize()
}

fn to_zpoly(coeffs: &[Rational]) -> ZPoly {
    let l = denominator_lcm(coeffs);
    let scaled: Vec<Rational> = coeffs
        .iter()
        .map(|c| c * Rational::from_integer(l.clone()))
        .collect();
    let g = numerator_gcd(&scaled);
    let mut v: ZPoly = scaled.iter().map(|c| c.numer() / &g).collect();
    if v.last().is_some_and(|c| c.is_negative()) {
        v = v.into_iter().map(|c| -c).collect();
    }
    v
}

fn factor_univariate_in(s: &QPoly, v: usize) -> Vec<QPoly> {
    let d = s.degree_in(v) as usize;
    let mut coeffs = vec![Rational::zero(); d + 1];
    for (e, c) in s.terms() {
        coeffs[e[v] as usize] = c.clone();
    }
    zassenhaus::factor_squarefree(&to_zpoly(&coeffs))
        .into_iter()
        .map(|f| {
            let mut out = QPoly::zero(s.vars().to_vec());
            for (k, c) in f.iter().enumerate() {
                let mut e = vec![0; s.nvars()];
                e[v] = k as u32;
                out.add_term(e, Rational::from_integer(c.clone()));
            }
            out.normalize()
        })
        .collect()
}

/// All irreducible factors of a univariate integer polynomial, repeated by
/// multiplicity (the variable itself included).
fn univariate_factor_list(f: &ZPoly) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let k = f.iter().take_while(|c| c.is_zero()).count();
    for _ in 0..k {
        out.push(vec![BigInt::zero(), BigInt::one()]);
    }
    let rest: Vec<Rational> = f[k..].iter().map(|c| Rational::from_integer(c.clone())).collect();
    let mut r = UniPoly::new(rest);
    if r.is_constant() {
        return out;
    }
    let sq = r.squarefree();
    for g in zassenhaus::factor_squarefree(&to_zpoly(sq.coeffs())) {
        let gu = UniPoly::new(g.iter().map(|c| Rational::from_integer(c.clone())).collect());
        while let Some(q) = r.div_exact(&gu) {
            r = q;
            out.push(g.clone());
        }
    }
    out
}

fn kronecker(s: &QPoly, used: &[usize]) -> Result<Vec<QPoly>> {
    let n = s.nvars();
    let mut radix = vec![0u64; n];
    let mut base = vec![0u64; n];
    let mut b: u64 = 1;
    for &v in used {
        base[v] = b;
        radix[v] = s.degree_in(v) as u64 + 1;
        b = b.saturating_mul(radix[v]);
        if b > KRONECKER_DEGREE_LIMIT + 1 {
            return Err(Error::resource(format!(
                "Kronecker substitution degree exceeds {KRONECKER_DEGREE_LIMIT}"
            )));
        }
    }
    let total = b;
    let image = |p: &QPoly| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); total as usize];
        for (e, c) in p.terms() {
            let k: u64 = used.iter().map(|&i| e[i] as u64 * base[i]).sum();
            v[k as usize] += c;
        }
        v
    };
    let inverse = |f: &ZPoly| -> Option<QPoly> {
        if f.len() as u64 > total {
            return None;
        }
        let mut out = QPoly::zero(s.vars().to_vec());
        for (k, c) in f.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0u32; n];
            for &i in used {
                e[i] = ((k as u64 / base[i]) % radix[i]) as u32;
            }
            out.add_term(e, Rational::from_integer(c.clone()));
        }
        Some(out.normalize())
    };
    let mut pieces = univariate_factor_list(&to_zpoly(&image(s)));
    let mut cur = s.clone();
    let mut result = Vec::new();
    let mut size = 1;
    'search: while 2 * size <= pieces.len() {
        let r = pieces.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let prod = idx
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| zmul(&acc, &pieces[i]));
            if let Some(f) = inverse(&prod) {
                if !f.is_constant() {
                    if let Some(q) = cur.div_exact(&f) {
                        result.push(f);
                        cur = q;
                        for &i in idx.iter().rev() {
                            pieces.remove(i);
                        }
                        continue 'search;
                    }
                }
            }
            let mut i = size;
            loop {
                if i == 0 {
                    size += 1;
                    continue 'search;
                }
                i -= 1;
                if idx[i] < r - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if !cur.is_constant() {
        result.push(cur.normalize());
    }
    Ok(result)
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Irreducible factors over ℚ of a univariate polynomial with multiplicity,
/// each primitive with integer coefficients and positive leading
/// coefficient, ordered by degree then coefficients.
pub fn factor_univariate(p: &UniPoly) -> Vec<(UniPoly, u32)> {
    if p.is_constant() {
        return Vec::new();
    }
    let list = univariate_factor_list(&to_zpoly(p.coeffs()));
    let mut out: Vec<(UniPoly, u32)> = Vec::new();
    for f in list {
        let u = UniPoly::new(f.into_iter().map(Rational::from_integer).collect());
        match out.iter_mut().find(|(g, _)| *g == u) {
            Some((_, m)) => *m += 1,
            None => out.push((u, 1)),
        }
    }
    out.sort();
    out
}

/// Distinct rational roots, ascending.
pub fn univariate_rational_roots(p: &UniPoly) -> Vec<Rational> {
    let mut roots: Vec<Rational> = factor_univariate(p)
        .into_iter()
        .filter(|(f, _)| f.degree() == Some(1))
        .map(|(f, _)| -f.coeff(0) / f.coeff(1))
        .collect();
    roots.sort();
    roots
}

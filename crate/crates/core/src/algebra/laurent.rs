//! Laurent-monomial changes of variables `y = x^A`.
//!
//! With `y_i = Π_j x_j^{A_ij}`, a monomial `x^e` becomes `y^{e·A⁻¹}`. The
//! forward direction substitutes `x = y^{A⁻¹}`; the inverse direction
//! substitutes `y = x^A`.

use std::collections::BTreeMap;

use super::field::Field;
use super::mpoly::MultiPoly;
use crate::error::{Error, Result};
use crate::lattice::UnimodularMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// A Laurent polynomial written as `y^monomial_part · core` with `core` a
/// polynomial free of monomial factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentFactorization<C: Field> {
    pub monomial_part: Vec<i64>,
    pub core: MultiPoly<C>,
}

impl<C: Field> LaurentFactorization<C> {
    /// Terms of `y^monomial_part · core` as signed exponent vectors.
    pub fn laurent_terms(&self) -> BTreeMap<Vec<i64>, C> {
        self.core
            .terms()
            .map(|(e, c)| {
                (
                    e.iter()
                        .zip(&self.monomial_part)
                        .map(|(&a, &b)| a as i64 + b)
                        .collect(),
                    c.clone(),
                )
            })
            .collect()
    }
}

/// Default names for the transformed variables: `L, X2, ..., Xn`.
pub fn default_names(n: usize) -> Vec<String> {
    let mut v = vec!["L".to_string()];
    v.extend((2..=n).map(|i| format!("X{i}")));
    v
}

/// Splits a Laurent polynomial given by signed exponents into monomial part
/// and core.
pub fn split_laurent<C: Field>(
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, C>,
) -> LaurentFactorization<C> {
    let n = vars.len();
    let mut min = vec![0i64; n];
    let mut first = true;
    for e in terms.keys() {
        if first {
            min = e.clone();
            first = false;
        } else {
            for (m, &x) in min.iter_mut().zip(e) {
                *m = (*m).min(x);
            }
        }
    }
    let mut core = MultiPoly::zero(vars);
    for (e, c) in terms {
        core.add_term(e.iter().zip(&min).map(|(a, b)| (a - b) as u32).collect(), c);
    }
    LaurentFactorization {
        monomial_part: min,
        core,
    }
}

/// Applies the change of variables and splits off the monomial part.
pub fn monomial_transform<C: Field>(
    p: &MultiPoly<C>,
    a: &UnimodularMatrix,
    direction: Direction,
    names: Option<Vec<String>>,
) -> Result<LaurentFactorization<C>> {
    let n = a.dim();
    if p.nvars() != n {
        return Err(Error::invalid(format!(
            "polynomial has {} variables but the matrix is {n}x{n}",
            p.nvars()
        )));
    }
    let m = match direction {
        Direction::Forward => a.inverse(),
        Direction::Inverse => a.rows(),
    };
    let names = names.unwrap_or_else(|| match direction {
        Direction::Forward => default_names(n),
        Direction::Inverse => (1..=n).map(|i| format!("x{i}")).collect(),
    });
    if names.len() != n {
        return Err(Error::invalid("wrong number of variable names"));
    }
    let mut terms: BTreeMap<Vec<i64>, C> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut f = vec![0i64; n];
        for (i, &ei) in e.iter().enumerate() {
            if ei == 0 {
                continue;
            }
            for (j, fj) in f.iter_mut().enumerate() {
                *fj += ei as i64 * m[i][j];
            }
        }
        // Distinct monomials stay distinct under an invertible map.
        terms.insert(f, c.clone());
    }
    Ok(split_laurent(names, terms))
}

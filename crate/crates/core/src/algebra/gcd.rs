//! Multivariate gcd (recursive primitive remainder sequences) and
//! squarefree parts.
//!
//! Everything is computed over ℚ; polynomials with ℚ(t) coefficients are
//! lifted to ℚ[x, t] first, and pure-`t` factors are dropped again on the
//! way back since they are units over ℚ(t).

use super::field::Field;
use super::mpoly::{MultiPoly, QPoly};
use crate::error::{Error, Result};

/// Pseudo-remainder of `a` by `b` with respect to variable `v`.
fn prem(a: &QPoly, b: &QPoly, v: usize) -> QPoly {
    let db = b.degree_in(v);
    let lb = b.lc_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.lc_in(v);
        let mut shift = vec![0; r.nvars()];
        shift[v] = dr - db;
        r = &(&lb * &r) - &(&lr * &b.mul_monomial(&shift));
    }
    r
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &QPoly, v: usize) -> QPoly {
    let mut g = QPoly::zero(p.vars().to_vec());
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c);
        if g.is_constant() && !g.is_zero() {
            return QPoly::one(p.vars().to_vec());
        }
    }
    g
}

pub fn primitive_part_in(p: &QPoly, v: usize) -> QPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").normalize()
}

fn gcd_rec(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() {
        return b.normalize();
    }
    if b.is_zero() {
        return a.normalize();
    }
    let one = QPoly::one(a.vars().to_vec());
    if a.is_constant() || b.is_constant() {
        return one;
    }
    let used: Vec<usize> = (0..a.nvars())
        .filter(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
        .collect();
    let v = *used.last().expect("nonconstant");
    if a.degree_in(v) == 0 {
        return gcd_rec(a, &content_in(b, v));
    }
    if b.degree_in(v) == 0 {
        return gcd_rec(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_rec(&ca, &cb);
    let mut pa = a.div_exact(&ca).expect("content divides");
    let mut pb = b.div_exact(&cb).expect("content divides");
    if pa.degree_in(v) < pb.degree_in(v) {
        std::mem::swap(&mut pa, &mut pb);
    }
    let g = loop {
        let r = prem(&pa, &pb, v);
        if r.is_zero() {
            break pb;
        }
        if r.degree_in(v) == 0 {
            break one.clone();
        }
        pa = pb;
        pb = primitive_part_in(&r, v);
    };
    (&c * &primitive_part_in(&g, v)).normalize()
}

/// Normalized gcd over ℚ.
pub fn gcd_q(a: &QPoly, b: &QPoly) -> QPoly {
    gcd_rec(a, b)
}

/// Normalized gcd over the coefficient field.
pub fn gcd<C: Field>(a: &MultiPoly<C>, b: &MultiPoly<C>) -> MultiPoly<C> {
    assert_eq!(a.vars(), b.vars(), "variable lists differ");
    let g = gcd_q(&C::lift_poly(a), &C::lift_poly(b));
    C::unlift_poly(&g, a.nvars()).normalize()
}

/// Squarefree part over ℚ: product of the distinct irreducible factors.
pub fn squarefree_q(p: &QPoly) -> QPoly {
    if p.is_constant() {
        return QPoly::one(p.vars().to_vec());
    }
    let v = p.used_vars()[0];
    let c = content_in(p, v);
    let pp = p.div_exact(&c).expect("content divides");
    let g = gcd_q(&pp, &pp.partial(v));
    let s = pp.div_exact(&g).expect("gcd divides");
    (&s * &squarefree_q(&c)).normalize()
}

/// Squarefree part, normalized to content 1.
pub fn squarefree_part<C: Field>(p: &MultiPoly<C>) -> Result<MultiPoly<C>> {
    if p.is_zero() {
        return Err(Error::invalid("squarefree part of the zero polynomial"));
    }
    let s = squarefree_q(&C::lift_poly(p));
    Ok(C::unlift_poly(&s, p.nvars()).normalize())
}

/// Whether `p` has no repeated irreducible factor.
pub fn is_squarefree<C: Field>(p: &MultiPoly<C>) -> bool {
    if p.is_zero() {
        return false;
    }
    match squarefree_part(p) {
        Ok(s) => s.total_degree() == p.total_degree() && s.num_terms() > 0 && {
            // Same degree in every variable means nothing was removed.
            (0..p.nvars()).all(|i| s.degree_in(i) == p.degree_in(i))
        },
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::{parse_poly, parse_poly_in};

    fn v(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn bivariate_gcd() {
        let vars = v(&["x0", "x1"]);
        let a = parse_poly_in("(x0 - x1)*(x0^2 + x1 + 3)", &vars).unwrap();
        let b = parse_poly_in("(x0 - x1)*(x0 + 2*x1)^2", &vars).unwrap();
        assert_eq!(gcd(&a, &b).to_string(), "x0 - x1");
    }

    #[test]
    fn gcd_over_ratfunc_ignores_t_content() {
        let vars = v(&["x0"]);
        let a = parse_poly_in("t*(x0 - t)*(x0 + 1)", &vars).unwrap();
        let b = parse_poly_in("(t^2 + 1)*(x0 - t)", &vars).unwrap();
        assert_eq!(gcd(&a, &b).to_string(), "x0 - t");
    }

    #[test]
    fn squarefree_examples() {
        let p = parse_poly("x0").unwrap();
        assert_eq!(squarefree_part(&p).unwrap().to_string(), "x0");
        let p = parse_poly("(x0 + 1)^2*(x0 - t)").unwrap();
        let s = squarefree_part(&p).unwrap();
        let expected = parse_poly_in("(x0 + 1)*(x0 - t)", p.vars()).unwrap();
        assert_eq!(s, expected.normalize());
        let p = parse_poly("6*x0^2*x1").unwrap();
        assert_eq!(squarefree_part(&p).unwrap().to_string(), "x0*x1");
        assert!(squarefree_part(&parse_poly_in("0", &v(&["x0"])).unwrap()).is_err());
    }

    #[test]
    fn squarefree_keeps_factors_free_of_the_first_variable() {
        let p = parse_poly("x0*x1^2").unwrap();
        assert_eq!(squarefree_part(&p).unwrap().to_string(), "x0*x1");
        assert!(!is_squarefree(&p));
        assert!(is_squarefree(&parse_poly("x0^2 + x1^2").unwrap()));
    }
}

//! Sylvester resultants and polynomial determinants.

use super::field::Field;
use super::mpoly::MultiPoly;
use crate::error::{Error, Result};

/// Determinant of a square matrix of polynomials by fraction-free (Bareiss)
/// elimination. All entries must share one variable list.
pub fn determinant<C: Field>(vars: &[String], mut m: Vec<Vec<MultiPoly<C>>>) -> MultiPoly<C> {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(vars.to_vec());
    }
    let mut sign_flip = false;
    let mut prev = MultiPoly::one(vars.to_vec());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return MultiPoly::zero(vars.to_vec()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
            m[i][k] = MultiPoly::zero(vars.to_vec());
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

/// Sylvester matrix of `p` and `q` in variable `var`, rows of `p` first.
pub fn sylvester_matrix<C: Field>(
    p: &MultiPoly<C>,
    q: &MultiPoly<C>,
    var: usize,
) -> Vec<Vec<MultiPoly<C>>> {
    let vars = p.vars().to_vec();
    let pc = p.coeffs_in(var);
    let qc = q.coeffs_in(var);
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    let size = m + n;
    let zero = MultiPoly::zero(vars);
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in pc.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in qc.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `Res_var(p, q)`: determinant of the Sylvester matrix with the rows of `p`
/// on top. A constant argument counts as degree zero, so `Res(p, 1) = 1`.
pub fn resultant<C: Field>(p: &MultiPoly<C>, q: &MultiPoly<C>, var: usize) -> Result<MultiPoly<C>> {
    if p.vars() != q.vars() {
        return Err(Error::invalid("resultant arguments use different variables"));
    }
    if var >= p.nvars() {
        return Err(Error::invalid("resultant variable out of range"));
    }
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(Error::invalid("resultant of two zero polynomials")),
        (true, false) | (false, true) => return Ok(MultiPoly::zero(p.vars().to_vec())),
        _ => {}
    }
    let rows = sylvester_matrix(p, q, var);
    Ok(determinant(p.vars(), rows))
}

/// Discriminant-style resultant `Res_var(p, ∂p/∂var)`.
pub fn derivative_resultant<C: Field>(p: &MultiPoly<C>, var: usize) -> Result<MultiPoly<C>> {
    let d = p.partial(var);
    if d.is_zero() {
        return Err(Error::invalid("polynomial does not involve the variable"));
    }
    resultant(p, &d, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::{parse_poly, parse_poly_in};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn linear_resultant() {
        let v = vars(&["x0", "x1", "x2"]);
        let p = parse_poly_in("x0 - x1", &v).unwrap();
        let q = parse_poly_in("x0 - x2", &v).unwrap();
        let r = resultant(&p, &q, 0).unwrap();
        assert_eq!(r, parse_poly_in("x1 - x2", &v).unwrap());
    }

    #[test]
    fn resultant_with_unit() {
        let p = parse_poly("x0^3 + 2*x0 + 5").unwrap();
        let one = parse_poly_in("1", p.vars()).unwrap();
        assert_eq!(resultant(&p, &one, 0).unwrap().to_string(), "1");
    }

    #[test]
    fn quadratic_against_derivative() {
        // Sylvester rows [1,0,-t],[2,0,0],[0,2,0] give determinant -4t.
        let p = parse_poly("x0^2 - t").unwrap();
        let q = parse_poly_in("2*x0", p.vars()).unwrap();
        assert_eq!(resultant(&p, &q, 0).unwrap().to_string(), "-4*t");
    }

    #[test]
    fn both_zero_is_an_error() {
        let z = parse_poly_in("0", &vars(&["x0"])).unwrap();
        assert!(matches!(resultant(&z, &z, 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn common_factor_gives_zero() {
        let v = vars(&["x0", "x1"]);
        let p = parse_poly_in("(x0 - x1)*(x0 + 1)", &v).unwrap();
        let q = parse_poly_in("(x0 - x1)*(x0 + x1^2)", &v).unwrap();
        assert!(resultant(&p, &q, 0).unwrap().is_zero());
    }
}

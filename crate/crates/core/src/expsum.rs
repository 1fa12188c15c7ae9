//! Exact exponential sums `Σ r_k(z) · exp(p_k(z))` with `r_k ∈ ℚ(z)` and
//! `p_k ∈ ℚ[z]`, the parameter `t` of ℚ(t) read as the variable `z`.
//!
//! Terms are grouped by exponent. Distinct exponents give functions that are
//! linearly independent over ℚ(z) (Borel for nonconstant differences,
//! Lindemann–Weierstrass for constant ones), so a sum is identically zero
//! exactly when every grouped coefficient vanishes.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::mpoly::KPoly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::upoly::UniPoly;

/// `exp(exponent(z)) · factor(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpTerm {
    pub exponent: UniPoly,
    pub factor: RatFunc,
}

impl ExpTerm {
    pub fn new(exponent: UniPoly, factor: RatFunc) -> Self {
        ExpTerm { exponent, factor }
    }

    pub fn rational(factor: RatFunc) -> Self {
        ExpTerm::new(UniPoly::default(), factor)
    }

    pub fn is_zero(&self) -> bool {
        self.factor.is_zero()
    }

    /// `u′/u = p′ + q′/q`.
    pub fn log_derivative(&self) -> RatFunc {
        RatFunc::from_poly(self.exponent.derivative()) + self.factor.derivative() / self.factor.clone()
    }

    pub fn mul(&self, other: &ExpTerm) -> ExpTerm {
        ExpTerm::new(&self.exponent + &other.exponent, self.factor.clone() * other.factor.clone())
    }

    pub fn pow(&self, k: u32) -> ExpTerm {
        ExpTerm::new(
            self.exponent.scale(&crate::algebra::rational::int(k as i64)),
            self.factor.pow(k),
        )
    }

    /// Value at a real point; `None` at a pole.
    pub fn eval_f64(&self, z: f64) -> Option<f64> {
        let e = eval_upoly_f64(&self.exponent, z);
        let n = eval_upoly_f64(self.factor.num(), z);
        let d = eval_upoly_f64(self.factor.den(), z);
        (d != 0.0).then(|| e.exp() * n / d)
    }
}

pub fn eval_upoly_f64(p: &UniPoly, z: f64) -> f64 {
    p.coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
}

impl fmt::Display for ExpTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.factor.fmt_with("z");
        if self.exponent.is_zero() {
            write!(f, "{q}")
        } else if self.factor.is_one() {
            write!(f, "exp({})", self.exponent.fmt_with("z"))
        } else {
            write!(f, "exp({})*({q})", self.exponent.fmt_with("z"))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpSum {
    terms: BTreeMap<UniPoly, RatFunc>,
}

impl ExpSum {
    pub fn zero() -> Self {
        ExpSum::default()
    }

    pub fn from_term(t: &ExpTerm) -> Self {
        let mut s = ExpSum::zero();
        s.add_term(t.exponent.clone(), t.factor.clone());
        s
    }

    pub fn add_term(&mut self, exponent: UniPoly, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exponent.clone()).or_insert_with(RatFunc::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UniPoly, &RatFunc)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &ExpSum) -> ExpSum {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &ExpSum) -> ExpSum {
        let mut out = ExpSum::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> ExpSum {
        let mut out = ExpSum::zero();
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    /// `d/dz`.
    pub fn derivative(&self) -> ExpSum {
        let mut out = ExpSum::zero();
        for (e, c) in &self.terms {
            let d = c.derivative() + c.clone() * RatFunc::from_poly(e.derivative());
            out.add_term(e.clone(), d);
        }
        out
    }

    pub fn eval_f64(&self, z: f64) -> Option<f64> {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            acc += ExpTerm::new(e.clone(), c.clone()).eval_f64(z)?;
        }
        Some(acc)
    }

    /// `F(u_1, ..., u_n)` for a polynomial whose ℚ(t) coefficients are read
    /// as functions of `z`.
    pub fn evaluate(f: &KPoly, u: &[ExpTerm]) -> ExpSum {
        assert_eq!(f.nvars(), u.len(), "one term per variable");
        let mut out = ExpSum::zero();
        for (exp, c) in f.terms() {
            let mut t = ExpTerm::rational(c.clone());
            for (k, &e) in exp.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&u[k].pow(e));
                }
            }
            out.add_term(t.exponent, t.factor);
        }
        out
    }
}

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| ExpTerm::new(e.clone(), c.clone()).to_string())
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly_in;

    fn ez(k: i64) -> ExpTerm {
        ExpTerm::new(UniPoly::from_ints(&[0, k]), RatFunc::one())
    }

    #[test]
    fn quadric_vanishes_on_veronese_curve() {
        let vars: Vec<String> = ["x0", "x1", "x2"].iter().map(|s| s.to_string()).collect();
        let d = parse_poly_in("x0*x2 - x1^2", &vars).unwrap();
        let curve = [ez(0), ez(1), ez(2)];
        assert!(ExpSum::evaluate(&d, &curve).is_zero());
        let d = parse_poly_in("x0*x2 + x1^2", &vars).unwrap();
        assert!(!ExpSum::evaluate(&d, &curve).is_zero());
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let s = ExpSum::from_term(&ExpTerm::new(
            UniPoly::from_ints(&[0, 0, 1]),
            RatFunc::from_poly(UniPoly::from_ints(&[-1, 1])),
        ));
        let d = s.derivative();
        let z = 0.3;
        let h = 1e-5;
        let fd = (s.eval_f64(z + h).unwrap() - s.eval_f64(z - h).unwrap()) / (2.0 * h);
        assert!((fd - d.eval_f64(z).unwrap()).abs() < 1e-7);
    }

    #[test]
    fn log_derivative_of_product() {
        // u = exp(z^2) * z  =>  u'/u = 2z + 1/z
        let u = ExpTerm::new(UniPoly::from_ints(&[0, 0, 1]), RatFunc::t());
        let want = RatFunc::from_poly(UniPoly::from_ints(&[0, 2])) + RatFunc::t().recip();
        assert_eq!(u.log_derivative(), want);
    }
}

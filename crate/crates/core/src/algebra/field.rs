//! The coefficient fields: ℚ and the differential field ℚ(t).

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::rational::{denominator_lcm, numerator_gcd, Rational};
use super::ratfunc::RatFunc;
use super::mpoly::{MultiPoly, QPoly};
use super::upoly::UniPoly;

/// A computable field of characteristic zero equipped with a derivation.
pub trait Field:
    Clone
    + Eq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    fn from_rational(r: Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(v.into()))
    }

    /// The value as a rational constant, if it is one.
    fn to_rational(&self) -> Option<Rational>;

    /// Value at `t = z`, `None` at a pole. Constants map to themselves.
    fn eval_param(&self, z: &Rational) -> Option<Rational>;

    /// Whether the value involves the parameter `t`.
    fn has_param(&self) -> bool {
        self.to_rational().is_none()
    }

    fn to_ratfunc(&self) -> RatFunc;

    /// Formal derivative d/dt; identically zero on ℚ.
    fn derivative(&self) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Whether printing needs parentheses when used as a multiplier.
    fn is_compound(&self) -> bool;

    /// Sign and magnitude for printing a coefficient inside a sum: returns
    /// `(negative, text of |c|)`. Compound values never report negative.
    fn signed_text(&self) -> (bool, String);

    /// A scalar `u` such that `u * c` is integral and primitive for every
    /// listed coefficient, with `u * lead` "positive". Used to give
    /// polynomials a canonical scalar multiple.
    fn normalizer(coeffs: &[&Self], lead: &Self) -> Self;

    /// A polynomial over ℚ with the same factors, up to units of this field.
    /// For ℚ(t) the parameter becomes an extra last variable.
    fn lift_poly(p: &MultiPoly<Self>) -> QPoly;

    /// Inverse of [`lift_poly`](Field::lift_poly) for a polynomial whose
    /// original variable count was `nvars`.
    fn unlift_poly(p: &QPoly, nvars: usize) -> MultiPoly<Self>;
}

impl Field for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn eval_param(&self, _z: &Rational) -> Option<Rational> {
        Some(self.clone())
    }

    fn to_ratfunc(&self) -> RatFunc {
        RatFunc::constant(self.clone())
    }

    fn derivative(&self) -> Self {
        Rational::zero()
    }

    fn inv(&self) -> Self {
        self.recip()
    }

    fn is_compound(&self) -> bool {
        false
    }

    fn signed_text(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }

    fn normalizer(coeffs: &[&Self], lead: &Self) -> Self {
        let l = denominator_lcm(coeffs.iter().copied());
        let scaled: Vec<Rational> = coeffs
            .iter()
            .map(|c| *c * Rational::from_integer(l.clone()))
            .collect();
        let g = numerator_gcd(&scaled);
        if g.is_zero() {
            return Rational::one();
        }
        let u = Rational::new(l, g);
        if lead.is_negative() {
            -u
        } else {
            u
        }
    }

    fn lift_poly(p: &MultiPoly<Self>) -> QPoly {
        p.clone()
    }

    fn unlift_poly(p: &QPoly, _nvars: usize) -> MultiPoly<Self> {
        p.clone()
    }
}

impl Field for RatFunc {
    fn from_rational(r: Rational) -> Self {
        RatFunc::constant(r)
    }

    fn to_rational(&self) -> Option<Rational> {
        self.as_constant()
    }

    fn eval_param(&self, z: &Rational) -> Option<Rational> {
        self.eval(z)
    }

    fn to_ratfunc(&self) -> RatFunc {
        self.clone()
    }

    fn derivative(&self) -> Self {
        RatFunc::derivative(self)
    }

    fn inv(&self) -> Self {
        self.recip()
    }

    fn is_compound(&self) -> bool {
        self.as_constant().is_none()
    }

    fn signed_text(&self) -> (bool, String) {
        if self.is_polynomial() && self.num().term_count() == 1 {
            let neg = self.num().lc().is_negative();
            let a = if neg { -self } else { self.clone() };
            (neg, a.to_string())
        } else {
            (false, self.to_string())
        }
    }

    fn normalizer(coeffs: &[&Self], lead: &Self) -> Self {
        // Clear denominators, divide by the polynomial content, then fix the
        // integer content and the sign of the leading coefficient.
        let mut den = UniPoly::constant(Rational::one());
        for c in coeffs {
            let g = den.gcd(c.den());
            den = (&den * c.den()).div_exact(&g).expect("lcm");
        }
        let nums: Vec<UniPoly> = coeffs
            .iter()
            .map(|c| (c.num() * &den).div_exact(c.den()).expect("denominator divides lcm"))
            .collect();
        let mut content = UniPoly::default();
        for n in &nums {
            content = content.gcd(n);
        }
        if content.is_zero() {
            return RatFunc::one();
        }
        let polys: Vec<UniPoly> = nums
            .iter()
            .map(|n| n.div_exact(&content).expect("content divides"))
            .collect();
        let all: Vec<&Rational> = polys.iter().flat_map(|p| p.coeffs().iter()).collect();
        let l = denominator_lcm(all.iter().copied());
        let scaled: Vec<Rational> = all
            .iter()
            .map(|c| *c * Rational::from_integer(l.clone()))
            .collect();
        let g = numerator_gcd(&scaled);
        let mut k = Rational::new(l, g);
        let lead_num = (lead.num() * &den).div_exact(lead.den()).expect("lcm");
        if (lead_num.lc() * &k / content.lc()).is_negative() {
            k = -k;
        }
        RatFunc::new(den.scale(&k), content)
    }

    fn lift_poly(p: &MultiPoly<Self>) -> QPoly {
        p.lift_t("t")
    }

    fn unlift_poly(p: &QPoly, nvars: usize) -> MultiPoly<Self> {
        if p.nvars() == nvars {
            return p.to_kpoly();
        }
        MultiPoly::unlift_t(p, nvars)
    }
}

//! Floating-point evaluation of `g(z) = Σ r_k(z) exp(p_k(z))` in scaled
//! form: every term is multiplied by `exp(−M)` with `M = max_k Re p_k(z)`,
//! which changes neither the argument of `g` nor `g′/g`.

use defect_forge_core::algebra::{RatFunc, UniPoly};
use defect_forge_core::expsum::ExpSum;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn to_f64_coeffs(p: &UniPoly) -> Vec<Complex64> {
    p.coeffs()
        .iter()
        .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect()
}

pub fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a)
}

fn derivative(c: &[Complex64]) -> Vec<Complex64> {
    c.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect()
}

#[derive(Clone, Debug)]
struct Term {
    p: Vec<Complex64>,
    dp: Vec<Complex64>,
    r: Vec<Complex64>,
    dr: Vec<Complex64>,
}

#[derive(Clone, Debug)]
pub struct EntireFn {
    terms: Vec<Term>,
}

/// `g(z)·exp(−shift)`, the same for `g′`, and the size of the scaled
/// terms with every polynomial coefficient taken in absolute value.
#[derive(Clone, Copy, Debug)]
pub struct Scaled {
    pub value: Complex64,
    pub deriv: Complex64,
    pub scale: f64,
    pub shift: f64,
}

impl Scaled {
    pub fn log_abs(&self) -> f64 {
        self.value.norm().ln() + self.shift
    }

    /// `|g| / scale`, roughly the relative accuracy available at `z`.
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            self.value.norm() / self.scale
        }
    }
}

impl EntireFn {
    /// Requires polynomial coefficients; `Σ` must be nonzero.
    pub fn from_expsum(s: &ExpSum) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::invalid("the expression vanishes identically"));
        }
        let mut den = UniPoly::from_ints(&[1]);
        for (_, c) in s.terms() {
            let g = den.gcd(c.den());
            den = (&den * c.den()).div_exact(&g).expect("gcd divides");
        }
        let den = RatFunc::from_poly(den);
        let terms = s
            .terms()
            .map(|(e, c)| {
                let c = c.clone() * den.clone();
                let p = to_f64_coeffs(e);
                let r = to_f64_coeffs(c.num());
                Term {
                    dp: derivative(&p),
                    dr: derivative(&r),
                    p,
                    r,
                }
            })
            .collect();
        Ok(EntireFn { terms })
    }

    /// `exp(p)·r` given by float coefficients, lowest degree first.
    pub fn from_terms(terms: &[(Vec<f64>, Vec<f64>)]) -> Self {
        let c = |v: &Vec<f64>| v.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>();
        EntireFn {
            terms: terms
                .iter()
                .map(|(p, r)| {
                    let (p, r) = (c(p), c(r));
                    Term {
                        dp: derivative(&p),
                        dr: derivative(&r),
                        p,
                        r,
                    }
                })
                .collect(),
        }
    }

    pub fn product(&self, other: &EntireFn) -> EntireFn {
        let mul = |a: &[Complex64], b: &[Complex64]| {
            let mut out = vec![Complex64::zero(); (a.len() + b.len()).saturating_sub(1)];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        let add = |a: &[Complex64], b: &[Complex64]| {
            let mut out = vec![Complex64::zero(); a.len().max(b.len())];
            for (i, x) in a.iter().enumerate() {
                out[i] += x;
            }
            for (i, y) in b.iter().enumerate() {
                out[i] += y;
            }
            out
        };
        let mut terms = Vec::new();
        for s in &self.terms {
            for t in &other.terms {
                let p = add(&s.p, &t.p);
                let r = mul(&s.r, &t.r);
                terms.push(Term {
                    dp: derivative(&p),
                    dr: derivative(&r),
                    p,
                    r,
                });
            }
        }
        EntireFn { terms }
    }

    pub fn eval(&self, z: Complex64) -> Scaled {
        let ps: Vec<Complex64> = self.terms.iter().map(|t| horner(&t.p, z)).collect();
        let shift = ps.iter().map(|p| p.re).fold(f64::NEG_INFINITY, f64::max);
        let mut value = Complex64::zero();
        let mut deriv = Complex64::zero();
        let mut scale = 0.0;
        for (t, p) in self.terms.iter().zip(&ps) {
            let w = (p - shift).exp();
            let r = horner(&t.r, z);
            let dr = horner(&t.dr, z);
            let dp = horner(&t.dp, z);
            value += r * w;
            deriv += (dr + r * dp) * w;
            let ra = t.r.iter().rev().fold(0.0, |acc, c| acc * z.norm() + c.norm());
            scale += ra * w.norm();
        }
        Scaled {
            value,
            deriv,
            scale,
            shift,
        }
    }
}

//! Curves `[f_0 : ... : f_n]` with components `exp(p(z)) · q(z)`.

use std::fmt;

use defect_forge_core::algebra::mpoly::KPoly;
use defect_forge_core::algebra::parse::{parse_expr, Expr, ExprKind};
use defect_forge_core::algebra::rational::Rational;
use defect_forge_core::algebra::{RatFunc, UniPoly};
use defect_forge_core::expsum::{ExpSum, ExpTerm};
use num_complex::Complex64;
use num_traits::One;

use crate::entire::{horner, to_f64_coeffs, EntireFn};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    /// After normalization every factor is a polynomial and the factors
    /// are coprime.
    pub components: Vec<ExpTerm>,
}

fn parse_err(e: &Expr, message: impl Into<String>) -> Error {
    Error::Core(e.error(message))
}

fn eval_component(e: &Expr) -> Result<ExpTerm> {
    Ok(match &e.kind {
        ExprKind::Num(n) => ExpTerm::rational(RatFunc::constant(Rational::from_integer(n.clone()))),
        ExprKind::Var(v) if v == "z" => ExpTerm::rational(RatFunc::t()),
        ExprKind::Var(v) => return Err(parse_err(e, format!("unknown identifier '{v}'"))),
        ExprKind::Neg(a) => {
            let t = eval_component(a)?;
            ExpTerm::new(t.exponent, -t.factor)
        }
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            let (x, y) = (eval_component(a)?, eval_component(b)?);
            if x.exponent != y.exponent {
                return Err(parse_err(
                    e,
                    "a component must be a single product exp(p)*q; sums of different exponentials are not allowed",
                ));
            }
            let f = if matches!(e.kind, ExprKind::Add(..)) {
                x.factor + y.factor
            } else {
                x.factor - y.factor
            };
            ExpTerm::new(x.exponent, f)
        }
        ExprKind::Mul(a, b) => eval_component(a)?.mul(&eval_component(b)?),
        ExprKind::Div(a, b) => {
            let d = eval_component(b)?;
            if d.is_zero() {
                return Err(parse_err(b, "division by zero"));
            }
            let inv = ExpTerm::new(-&d.exponent, d.factor.recip());
            eval_component(a)?.mul(&inv)
        }
        ExprKind::Pow(a, k) => eval_component(a)?.pow(*k),
        ExprKind::Call(name, arg) if name == "exp" => {
            let inner = eval_component(arg)?;
            if !inner.exponent.is_zero() || !inner.factor.is_polynomial() {
                return Err(parse_err(arg, "the argument of exp must be a polynomial in z"));
            }
            ExpTerm::new(inner.factor.num().clone(), RatFunc::one())
        }
        ExprKind::Call(name, _) => return Err(parse_err(e, format!("unknown function '{name}'"))),
    })
}

/// One component such as `exp(z^2)*(z-1)/(z+2)`.
pub fn parse_component(src: &str, line: usize) -> Result<ExpTerm> {
    eval_component(&parse_expr(src, line)?)
}

impl CurveSpec {
    pub fn new(components: Vec<ExpTerm>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::invalid("a curve needs at least two components"));
        }
        if components.iter().all(|c| c.is_zero()) {
            return Err(Error::invalid("every component is zero"));
        }
        Ok(CurveSpec { components }.normalized())
    }

    /// One component per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut comps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let l = raw.split('#').next().unwrap_or("");
            if l.trim().is_empty() {
                continue;
            }
            comps.push(parse_component(l, i + 1)?);
        }
        CurveSpec::new(comps)
    }

    /// Clears denominators and common polynomial factors.
    fn normalized(self) -> Self {
        let mut lcm = UniPoly::from_ints(&[1]);
        for c in &self.components {
            if c.is_zero() {
                continue;
            }
            let d = c.factor.den();
            let g = lcm.gcd(d);
            lcm = (&lcm * d).div_exact(&g).expect("gcd divides");
        }
        let lcm = RatFunc::from_poly(lcm);
        let scaled: Vec<ExpTerm> = self
            .components
            .iter()
            .map(|c| ExpTerm::new(c.exponent.clone(), c.factor.clone() * lcm.clone()))
            .collect();
        let mut g = UniPoly::default();
        for c in &scaled {
            if !c.is_zero() {
                g = if g.is_zero() { c.factor.num().clone() } else { g.gcd(c.factor.num()) };
            }
        }
        let g = RatFunc::from_poly(g.monic());
        CurveSpec {
            components: scaled
                .into_iter()
                .map(|c| ExpTerm::new(c.exponent, c.factor / g.clone()))
                .collect(),
        }
    }

    /// Projective dimension `n`.
    pub fn n(&self) -> usize {
        self.components.len() - 1
    }

    /// `[f_0 : f_j]`.
    pub fn pair(&self, i: usize, j: usize) -> Result<Self> {
        CurveSpec::new(vec![self.components[i].clone(), self.components[j].clone()])
    }

    /// `D(f)` exactly, with `t` read as `z`.
    pub fn evaluate(&self, d: &KPoly) -> Result<ExpSum> {
        if d.nvars() != self.components.len() {
            return Err(Error::invalid(format!(
                "divisor has {} variables but the curve has {} components",
                d.nvars(),
                self.components.len()
            )));
        }
        Ok(ExpSum::evaluate(d, &self.components))
    }

    /// `D(f)` as an entire function, or `CurveOnDivisor`.
    pub fn divisor_function(&self, d: &KPoly, index: usize) -> Result<EntireFn> {
        if d.terms().any(|(_, c)| !c.is_polynomial()) {
            return Err(Error::invalid("divisor coefficients must be polynomials in t"));
        }
        let s = self.evaluate(d)?;
        if s.is_zero() {
            return Err(Error::CurveOnDivisor {
                index,
                divisor: d.to_string(),
            });
        }
        EntireFn::from_expsum(&s)
    }

    pub fn log_components(&self) -> Vec<LogComponent> {
        self.components
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| LogComponent {
                exponent: to_f64_coeffs(&c.exponent),
                factor: to_f64_coeffs(c.factor.num()),
            })
            .collect()
    }
}

/// `log |exp(p) q|` in floating point.
#[derive(Clone, Debug)]
pub struct LogComponent {
    pub exponent: Vec<Complex64>,
    pub factor: Vec<Complex64>,
}

impl LogComponent {
    pub fn log_abs(&self, z: Complex64) -> f64 {
        horner(&self.exponent, z).re + horner(&self.factor, z).norm().ln()
    }
}

/// `log max_i |f_i(z)|`.
pub fn log_norm(comps: &[LogComponent], z: Complex64) -> f64 {
    comps.iter().map(|c| c.log_abs(z)).fold(f64::NEG_INFINITY, f64::max)
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

//! The twisted derivative `D_u(F) = Σ_I (a_I′ + a_I Σ_j i_j ℓ_j) x^I` with
//! `ℓ_j = u_j′/u_j`, and the coprimality test for `F` and `D_u(F)`.

use num_integer::Integer;

use crate::algebra::field::Field;
use crate::algebra::gcd::{gcd, is_squarefree};
use crate::algebra::mpoly::{grlex, KPoly};
use crate::algebra::ratfunc::RatFunc;
use crate::error::{Error, Result};
use crate::expsum::{ExpSum, ExpTerm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UModel {
    pub log_derivs: Vec<RatFunc>,
    /// Concrete functions `u_j = exp(p_j) q_j` with these log-derivatives.
    pub realization: Option<Vec<ExpTerm>>,
}

impl UModel {
    pub fn new(log_derivs: Vec<RatFunc>) -> Self {
        UModel {
            log_derivs,
            realization: None,
        }
    }

    pub fn from_realization(u: Vec<ExpTerm>) -> Result<Self> {
        if u.iter().any(|t| t.is_zero()) {
            return Err(Error::invalid("a component of u is identically zero"));
        }
        Ok(UModel {
            log_derivs: u.iter().map(|t| t.log_derivative()).collect(),
            realization: Some(u),
        })
    }

    /// Attaches a realization after checking its log-derivatives agree.
    pub fn with_realization(mut self, u: Vec<ExpTerm>) -> Result<Self> {
        let induced = UModel::from_realization(u)?;
        if induced.log_derivs != self.log_derivs {
            return Err(Error::invalid(
                "realization does not match the logarithmic derivatives",
            ));
        }
        self.realization = induced.realization;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.log_derivs.len()
    }
}

pub fn du_apply(f: &KPoly, u: &UModel) -> Result<KPoly> {
    if f.nvars() != u.n() {
        return Err(Error::invalid(format!(
            "polynomial has {} variables, model has {}",
            f.nvars(),
            u.n()
        )));
    }
    let mut out = KPoly::zero(f.vars().to_vec());
    for (exp, a) in f.terms() {
        let mut c = Field::derivative(a);
        for (i, &e) in exp.iter().enumerate() {
            if e > 0 {
                c += &(a.clone() * RatFunc::from_i64(e as i64) * u.log_derivs[i].clone());
            }
        }
        out.add_term(exp.clone(), c);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coprimality {
    Coprime,
    /// A primitive integer tuple read off the common factor `g`.
    MonomialRelation { relation: Vec<i64>, common_factor: KPoly },
}

/// Decides whether `gcd(F, D_u F)` is constant. Otherwise the relation is
/// the primitive difference of the two grlex-largest exponents of the gcd.
pub fn du_coprime(f: &KPoly, u: &UModel) -> Result<Coprimality> {
    if f.is_constant() {
        return Err(Error::precondition("F is constant"));
    }
    if f.has_monomial_factor() {
        return Err(Error::precondition("F has a monomial factor"));
    }
    if !is_squarefree(f) {
        return Err(Error::precondition("F has a repeated factor"));
    }
    let d = du_apply(f, u)?;
    if d.is_zero() {
        return Err(Error::precondition("D_u(F) vanishes identically"));
    }
    let g = gcd(f, &d);
    if g.is_constant() {
        return Ok(Coprimality::Coprime);
    }
    let mut support: Vec<&Vec<u32>> = g.terms().map(|(e, _)| e).collect();
    support.sort_by(|a, b| grlex(b, a));
    // g divides F, which has no monomial factor, so g has two terms at least.
    let (a, b) = (support[0], support[1]);
    let diff: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| x as i64 - y as i64).collect();
    let k = diff.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    Ok(Coprimality::MonomialRelation {
        relation: diff.iter().map(|x| x / k).collect(),
        common_factor: g,
    })
}

/// `F(u)` as an exact exponential sum; needs the realization.
pub fn evaluate_on_model(f: &KPoly, u: &UModel) -> Result<ExpSum> {
    let real = u
        .realization
        .as_ref()
        .ok_or_else(|| Error::invalid("model has no analytic realization"))?;
    if f.nvars() != real.len() {
        return Err(Error::invalid("dimension mismatch"));
    }
    Ok(ExpSum::evaluate(f, real))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly_in;
    use crate::algebra::upoly::UniPoly;
    use num_traits::One;

    fn vars2() -> Vec<String> {
        vec!["x1".into(), "x2".into()]
    }

    fn ell(a: &str, b: &str) -> UModel {
        let p = |s: &str| parse_poly_in(s, &[]).unwrap().as_constant().unwrap();
        UModel::new(vec![p(a), p(b)])
    }

    #[test]
    fn single_monomial() {
        let u = ell("t", "t^2 + 1");
        let f = parse_poly_in("x1*x2", &vars2()).unwrap();
        let d = du_apply(&f, &u).unwrap();
        assert_eq!(d, parse_poly_in("(t^2 + t + 1)*x1*x2", &vars2()).unwrap());
    }

    #[test]
    fn coefficient_derivative_enters() {
        let u = ell("1", "t");
        let f = parse_poly_in("t*x1", &vars2()).unwrap();
        let d = du_apply(&f, &u).unwrap();
        assert_eq!(d, parse_poly_in("(1 + t)*x1", &vars2()).unwrap());
    }

    #[test]
    fn coprime_and_relation() {
        let f = parse_poly_in("x1^2 - x2", &vars2()).unwrap();
        assert_eq!(du_coprime(&f, &ell("1", "t")).unwrap(), Coprimality::Coprime);
        let f = parse_poly_in("x1 - x2", &vars2()).unwrap();
        match du_coprime(&f, &ell("t", "t")).unwrap() {
            Coprimality::MonomialRelation { relation, .. } => assert_eq!(relation, vec![1, -1]),
            other => panic!("{other:?}"),
        }
        let f = parse_poly_in("x1", &vars2()).unwrap();
        assert!(matches!(du_coprime(&f, &ell("1", "t")), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn value_identity_symbolic() {
        let u1 = ExpTerm::new(UniPoly::from_ints(&[0, 1]), RatFunc::one());
        let u2 = ExpTerm::new(UniPoly::from_ints(&[0, 0, 1]), RatFunc::t());
        let u = UModel::from_realization(vec![u1, u2]).unwrap();
        let f = parse_poly_in("t*x1^2 + x2 - 3", &vars2()).unwrap();
        let lhs = evaluate_on_model(&f, &u).unwrap().derivative();
        let rhs = evaluate_on_model(&du_apply(&f, &u).unwrap(), &u).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn realization_must_match() {
        let u1 = ExpTerm::new(UniPoly::from_ints(&[0, 1]), RatFunc::one());
        assert!(ell("1", "0").with_realization(vec![u1.clone(), u1.clone()]).is_err());
        let ok = UModel::new(vec![RatFunc::one(), RatFunc::one()]);
        assert!(ok.with_realization(vec![u1.clone(), u1]).is_ok());
    }
}

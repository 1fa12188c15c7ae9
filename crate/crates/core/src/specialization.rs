//! Obstruction sets for specializing parameters: a finite list Σ of
//! polynomials in the parameters such that `f(λ, x)` keeps "no monomial
//! factor, no repeated factor" whenever every generator is nonzero at λ.

use num_traits::Zero;

use crate::algebra::factor::factor_order;
use crate::algebra::gcd::is_squarefree;
use crate::algebra::mpoly::{product, KPoly, QPoly};
use crate::algebra::rational::{int, Rational};
use crate::algebra::resultant::resultant;
use crate::error::{Error, Result};

/// Values substituted for the non-distinguished x-variables, shifted by
/// one on each retry.
const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
const RETRIES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSet {
    /// Names of the parameter variables; every generator uses exactly these.
    pub params: Vec<String>,
    pub generators: Vec<QPoly>,
    /// Product of the generators.
    pub product_form: QPoly,
}

impl SigmaSet {
    /// Whether every generator is nonzero at `lambda`.
    pub fn admits(&self, lambda: &[Rational]) -> bool {
        self.generators.iter().all(|g| !g.eval(lambda).is_zero())
    }
}

fn check_precondition(f: &QPoly) -> Result<()> {
    if f.has_monomial_factor() {
        return Err(Error::precondition("polynomial has a monomial factor"));
    }
    if !is_squarefree(f) {
        return Err(Error::precondition("polynomial has a repeated factor"));
    }
    Ok(())
}

/// Σ for `f` with the variables at `params` treated as parameters.
pub fn compute_sigma(f: &QPoly, params: &[usize]) -> Result<SigmaSet> {
    let nv = f.nvars();
    if params.iter().any(|&p| p >= nv) {
        return Err(Error::invalid("parameter index out of range"));
    }
    let xs: Vec<usize> = (0..nv).filter(|i| !params.contains(i)).collect();
    let active: Vec<usize> = xs.iter().copied().filter(|&i| f.degree_in(i) > 0).collect();
    if active.is_empty() {
        return Err(Error::invalid("polynomial is constant in every x-variable"));
    }
    check_precondition(f)?;
    let param_names: Vec<String> = params.iter().map(|&i| f.vars()[i].clone()).collect();
    for attempt in 0..=RETRIES {
        if let Some(gens) = generators_with_shift(f, &xs, &active, &param_names, attempt)? {
            return Ok(assemble(param_names, gens));
        }
    }
    Err(Error::resource(format!(
        "generic substitution degenerated {} times",
        RETRIES + 1
    )))
}

fn generators_with_shift(
    f: &QPoly,
    xs: &[usize],
    active: &[usize],
    param_names: &[String],
    shift: usize,
) -> Result<Option<Vec<QPoly>>> {
    let mut gens = Vec::new();
    for &xj in active {
        let mut g = f.clone();
        for (k, &xk) in xs.iter().enumerate() {
            if xk != xj {
                g = g.subst_value(xk, &int(PRIMES[shift + k]));
            }
        }
        let coeffs = g.coeffs_in(xj);
        let lc = coeffs.last().cloned().unwrap_or_else(|| QPoly::zero(g.vars().to_vec()));
        let tc = coeffs[0].clone();
        let disc = resultant(&g, &g.partial(xj), xj)?;
        if lc.is_zero() || tc.is_zero() || disc.is_zero() {
            return Ok(None);
        }
        for h in [lc, tc, disc] {
            gens.push(h.with_vars(param_names)?);
        }
    }
    Ok(Some(gens))
}

fn assemble(params: Vec<String>, gens: Vec<QPoly>) -> SigmaSet {
    let mut out: Vec<QPoly> = gens
        .into_iter()
        .map(|g| g.normalize())
        .filter(|g| !g.is_constant())
        .collect();
    out.sort_by(factor_order);
    out.dedup();
    if out.is_empty() {
        out.push(QPoly::one(params.clone()));
    }
    let product_form = product(&params, &out);
    SigmaSet {
        params,
        generators: out,
        product_form,
    }
}

/// Σ for a polynomial over ℚ(t): `t` joins the parameters as a trailing
/// variable named `t`.
pub fn compute_sigma_k(f: &KPoly, params: &[usize]) -> Result<SigmaSet> {
    if !f.involves_param() {
        return compute_sigma(&f.to_rational().expect("no parameter"), params);
    }
    let lifted = f.lift_t("t");
    let mut ps = params.to_vec();
    ps.push(lifted.nvars() - 1);
    compute_sigma(&lifted, &ps)
}

/// Whether `f` with the parameters set to `lambda` is nonzero, free of
/// monomial factors and squarefree in the remaining variables.
pub fn specialization_ok(f: &QPoly, params: &[usize], lambda: &[Rational]) -> bool {
    let mut g = f.clone();
    for (&p, v) in params.iter().zip(lambda) {
        g = g.subst_value(p, v);
    }
    let xs: Vec<usize> = (0..f.nvars()).filter(|i| !params.contains(i)).collect();
    let names: Vec<String> = xs.iter().map(|&i| f.vars()[i].clone()).collect();
    let Ok(g) = g.with_vars(&names) else {
        return false;
    };
    !g.is_zero() && !g.has_monomial_factor() && is_squarefree(&g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn q(src: &str) -> QPoly {
        parse_poly(src).unwrap().to_rational().unwrap()
    }

    fn sigma_text(f: &KPoly, params: &[usize]) -> Vec<String> {
        compute_sigma_k(f, params)
            .unwrap()
            .generators
            .iter()
            .map(|g| g.to_string())
            .collect()
    }

    #[test]
    fn square_root_family() {
        let f = parse_poly("x0^2 - t").unwrap();
        assert_eq!(sigma_text(&f, &[]), vec!["t"]);
    }

    #[test]
    fn quadratic_with_linear_term() {
        // The trailing coefficient t joins the discriminant 1 - 4t.
        let f = parse_poly("x0^2 + x0 + t").unwrap();
        assert_eq!(sigma_text(&f, &[]), vec!["t", "4*t - 1"]);
    }

    #[test]
    fn monomial_factor_rejected() {
        let f = parse_poly("t*x0").unwrap();
        assert!(matches!(compute_sigma_k(&f, &[]), Err(Error::PreconditionViolated(_))));
        let f = q("(x0 + y0)^2");
        assert!(matches!(compute_sigma(&f, &[1]), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn x_free_rejected() {
        let f = q("y0 + 1");
        assert!(matches!(compute_sigma(&f, &[0]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn excluded_values_do_degenerate() {
        // x0^2 - y0 x0 + 1: discriminant y0^2 - 4.
        let f = q("x0^2 - y0*x0 + 1");
        let s = compute_sigma(&f, &[1]).unwrap();
        assert!(s.generators.iter().any(|g| g.to_string() == "y0^2 - 4"));
        assert!(!specialization_ok(&f, &[1], &[int(2)]));
        assert!(specialization_ok(&f, &[1], &[int(3)]));
        assert!(s.admits(&[int(3)]));
    }

    #[test]
    fn repeated_factor_in_second_variable_is_caught() {
        // At y0 = 0 only (x1 + 1)^2 survives, which does not involve x0.
        let f = q("x1^2 + 2*x1 + 1 + y0*x0");
        let s = compute_sigma(&f, &[2]).unwrap();
        for lam in -3..=3 {
            let l = [int(lam)];
            if s.admits(&l) {
                assert!(specialization_ok(&f, &[2], &l), "lambda = {lam}");
            }
        }
    }
}

//! The degeneracy pipeline: Jacobian of the forms, the morphism
//! `π = [F_1^{a_1} : … : F_{n+1}^{a_{n+1}}]`, the image `A` of a ramification
//! component, and the final polynomial `B = π*(B₀)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::factor::factorize;
use crate::algebra::field::Field;
use crate::algebra::mpoly::{grlex, monomials_of_degree, product, KPoly, Monomial};
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::rational::{rat, Rational};
use crate::algebra::resultant::determinant;
use crate::error::{Error, Result};
use crate::exceptional::{build_z_projective, ExceptionalDescription};
use crate::linalg::{Echelon, SparseVec};
use crate::nullstellensatz::{
    check_weak_general_position, monomial_count, no_common_zero, subsets, PositionWitness,
};

/// Largest Macaulay matrix width the transversality test will build.
pub const TRANSVERSALITY_COLUMNS: u128 = 20_000;

pub fn jacobian_det(forms: &[KPoly]) -> Result<KPoly> {
    let Some(first) = forms.first() else {
        return Err(Error::invalid("no forms given"));
    };
    let n = first.nvars();
    if forms.len() != n {
        return Err(Error::invalid(format!(
            "{} forms in {n} variables; the Jacobian needs a square matrix",
            forms.len()
        )));
    }
    if forms.iter().any(|f| f.vars() != first.vars()) {
        return Err(Error::invalid("forms use different variable lists"));
    }
    let m: Vec<Vec<KPoly>> = forms
        .iter()
        .map(|f| (0..n).map(|j| f.partial(j)).collect())
        .collect();
    Ok(determinant(first.vars(), m))
}

#[derive(Clone, Debug)]
pub struct PiMorphism {
    pub forms: Vec<KPoly>,
    pub exponents: Vec<u32>,
    /// `d₁ = deg F_1 · a_1`.
    pub common_degree: u32,
    /// `F_i^{a_i}`.
    pub powers: Vec<KPoly>,
    pub target_vars: Vec<String>,
    pub witness: PositionWitness,
}

impl PiMorphism {
    /// `A(F_1^{a_1}, …, F_{n+1}^{a_{n+1}})`.
    pub fn pullback(&self, a: &KPoly) -> Result<KPoly> {
        if a.nvars() != self.powers.len() {
            return Err(Error::invalid("polynomial is not in the target variables"));
        }
        Ok(a.substitute(&self.powers))
    }
}

pub fn build_pi(forms: &[KPoly]) -> Result<PiMorphism> {
    let Some(first) = forms.first() else {
        return Err(Error::invalid("no forms given"));
    };
    for (i, f) in forms.iter().enumerate() {
        if f.is_constant() || !f.is_homogeneous() {
            return Err(Error::invalid(format!(
                "form {} must be nonconstant and homogeneous",
                i + 1
            )));
        }
        if f.vars() != first.vars() {
            return Err(Error::invalid("forms use different variable lists"));
        }
    }
    if forms.len() != first.nvars() {
        return Err(Error::invalid(format!(
            "{} forms in {} variables",
            forms.len(),
            first.nvars()
        )));
    }
    let witness = check_weak_general_position(forms)?;
    let degs: Vec<u32> = forms.iter().map(|f| f.total_degree()).collect();
    let l = degs.iter().fold(1u32, |acc, d| acc.lcm(d));
    let exponents: Vec<u32> = degs.iter().map(|d| l / d).collect();
    let powers = forms.iter().zip(&exponents).map(|(f, &a)| f.pow(a)).collect();
    Ok(PiMorphism {
        forms: forms.to_vec(),
        exponents,
        common_degree: l,
        powers,
        target_vars: (0..forms.len()).map(|i| format!("y{i}")).collect(),
        witness,
    })
}

/// Normal crossings: wherever `k ≤ n` of the divisors meet, their gradients
/// are independent. Checked exactly as "no common zero" of the forms and the
/// `k×k` minors of their gradient matrix.
pub fn check_transversal(forms: &[KPoly]) -> Result<()> {
    let nv = forms[0].nvars();
    let vars = forms[0].vars().to_vec();
    let grads: Vec<Vec<KPoly>> = forms
        .iter()
        .map(|f| (0..nv).map(|j| f.partial(j)).collect())
        .collect();
    for k in 1..nv {
        for rows in subsets(forms.len(), k) {
            let mut system: Vec<KPoly> = rows.iter().map(|&i| forms[i].clone()).collect();
            for cols in subsets(nv, k) {
                let m: Vec<Vec<KPoly>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| grads[i][j].clone()).collect())
                    .collect();
                system.push(determinant(&vars, m));
            }
            let dmax = system.iter().map(|f| f.total_degree()).max().unwrap_or(0);
            let width = monomial_count(nv, nv as u32 * dmax.saturating_sub(1) + 1);
            if width > TRANSVERSALITY_COLUMNS {
                return Err(Error::Inconclusive(format!(
                    "transversality test needs {width} columns; assert it instead"
                )));
            }
            let refs: Vec<&KPoly> = system.iter().collect();
            if !no_common_zero(&refs) {
                let names: Vec<String> = rows.iter().map(|i| format!("D{}", i + 1)).collect();
                return Err(Error::precondition(format!(
                    "{} do not meet transversally",
                    names.join(", ")
                )));
            }
        }
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq)]
struct Grlex(Monomial);

impl Ord for Grlex {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.0, &other.0)
    }
}

impl PartialOrd for Grlex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn divides_monomial(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Remainder of full division by the single polynomial `g` (grlex). Unique,
/// since one polynomial is a Gröbner basis of the ideal it generates.
pub fn normal_form(p: &KPoly, g: &KPoly) -> KPoly {
    let (lt, lc) = g.lead().map(|(e, c)| (e.clone(), c.clone())).expect("nonzero divisor");
    let mut work: BTreeMap<Grlex, RatFunc> = p.terms().map(|(e, c)| (Grlex(e.clone()), c.clone())).collect();
    let mut rem = KPoly::zero(p.vars().to_vec());
    while let Some((Grlex(e), c)) = work.pop_last() {
        if !divides_monomial(&lt, &e) {
            rem.add_term(e, c);
            continue;
        }
        let q = c / lc.clone();
        let shift: Vec<u32> = e.iter().zip(&lt).map(|(a, b)| a - b).collect();
        for (ge, gc) in g.terms() {
            if *ge == lt {
                continue;
            }
            let key = Grlex(ge.iter().zip(&shift).map(|(a, b)| a + b).collect());
            let d = q.clone() * gc.clone();
            let slot = work.entry(key.clone()).or_insert_with(RatFunc::zero);
            *slot -= &d;
            if slot.is_zero() {
                work.remove(&key);
            }
        }
    }
    rem
}

/// The image hypersurface `A` of `{G̃ = 0}` under `π` and the cofactor `H`
/// with `π*A = G̃²·H`.
///
/// `A` is the lowest-degree form whose pullback vanishes on `G̃ = 0`, found
/// by linear algebra on normal forms modulo `G̃`; its degree is at most
/// `deg G̃ · d₁^{n-1}`.
pub fn image_hypersurface(g_tilde: &KPoly, pi: &PiMorphism) -> Result<(KPoly, KPoly)> {
    if g_tilde.is_constant() {
        return Err(Error::invalid("G~ must be nonconstant"));
    }
    if g_tilde.vars() != pi.forms[0].vars() {
        return Err(Error::invalid("G~ is not in the source variables"));
    }
    let np1 = pi.powers.len();
    let bound = g_tilde.total_degree() * pi.common_degree.pow(np1 as u32 - 2);
    let reduced: Vec<KPoly> = pi.powers.iter().map(|p| normal_form(p, g_tilde)).collect();
    let mut cache: HashMap<Monomial, KPoly> = HashMap::new();
    let one = KPoly::one(g_tilde.vars().to_vec());
    cache.insert(vec![0; np1], one);
    for k in 1..=bound {
        let monos = monomials_of_degree(np1, k);
        let mut index: HashMap<Monomial, usize> = HashMap::new();
        let mut ech: Echelon<RatFunc> = Echelon::new(true);
        for (tag, beta) in monos.iter().enumerate() {
            let nf = monomial_image(beta, &reduced, g_tilde, &mut cache);
            let mut v: SparseVec<RatFunc> = SparseVec::new();
            for (e, c) in nf.terms() {
                let next = index.len();
                let i = *index.entry(e.clone()).or_insert(next);
                v.insert(i, c.clone());
            }
            if let Some(combo) = ech.express(v.clone()) {
                let mut a = KPoly::monomial(pi.target_vars.clone(), beta.clone(), RatFunc::from_i64(1));
                for (t, c) in combo {
                    a.add_term(monos[t].clone(), -c);
                }
                let a = a.normalize();
                let pulled = pi.pullback(&a)?;
                let sq = g_tilde * g_tilde;
                return match pulled.div_exact(&sq) {
                    Some(h) => Ok((a, h)),
                    None => Err(Error::PipelineFailure {
                        stage: "image".into(),
                        reason: format!(
                            "candidate A = {a} vanishes on G~ = 0 only to first order"
                        ),
                    }),
                };
            }
            ech.insert(v, tag);
        }
    }
    Err(Error::PipelineFailure {
        stage: "image".into(),
        reason: format!("no vanishing form up to degree {bound}"),
    })
}

/// Normal form of `π*(y^β)` modulo `G̃`, memoized over the monomials.
fn monomial_image(
    beta: &Monomial,
    reduced: &[KPoly],
    g: &KPoly,
    cache: &mut HashMap<Monomial, KPoly>,
) -> KPoly {
    if let Some(v) = cache.get(beta) {
        return v.clone();
    }
    let i = beta.iter().position(|&e| e > 0).expect("nonconstant monomial");
    let mut prev = beta.clone();
    prev[i] -= 1;
    let base = monomial_image(&prev, reduced, g, cache);
    let v = normal_form(&(&base * &reduced[i]), g);
    cache.insert(beta.clone(), v.clone());
    v
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// Defaults to `1/(4 d₁)`.
    pub epsilon: Option<Rational>,
    pub kappa: Rational,
    pub budget: usize,
    pub all_factors: bool,
    pub assert_transversal: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            epsilon: None,
            kappa: rat(1, 1),
            budget: 10_000,
            all_factors: false,
            assert_transversal: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FactorRun {
    pub g_tilde: KPoly,
    pub a: KPoly,
    pub h: KPoly,
    pub description: ExceptionalDescription,
    pub b0: KPoly,
    pub b: KPoly,
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub g: KPoly,
    pub pi: PiMorphism,
    pub runs: Vec<FactorRun>,
    pub b: KPoly,
    pub degree_bound: u32,
    pub divisibility_check: bool,
    pub epsilon: Rational,
    pub budget: usize,
    pub budget_exhausted: bool,
    pub transversality: &'static str,
}

impl PipelineReport {
    pub fn first(&self) -> &FactorRun {
        &self.runs[0]
    }
}

fn coefficient_key(p: &KPoly) -> Vec<(Monomial, String)> {
    let mut t: Vec<(Monomial, String)> = p.terms().map(|(e, c)| (e.clone(), c.to_string())).collect();
    t.sort_by(|a, b| grlex(&b.0, &a.0).then_with(|| a.1.cmp(&b.1)));
    t
}

/// Irreducible factors of `G` in weakly general position with the forms,
/// by degree and then term list.
pub fn admissible_factors(g: &KPoly, forms: &[KPoly]) -> Result<Vec<KPoly>> {
    if g.is_zero() {
        return Err(Error::invalid("the Jacobian vanishes identically"));
    }
    if g.is_constant() {
        return Err(Error::invalid(
            "the Jacobian is constant, so there is no ramification component",
        ));
    }
    let mut out: Vec<KPoly> = Vec::new();
    for (f, _) in factorize(g)?.factors {
        let f = f.normalize();
        let mut family = vec![f.clone()];
        family.extend(forms.iter().cloned());
        match check_weak_general_position(&family) {
            Ok(_) => out.push(f),
            Err(Error::NotInPosition(_)) | Err(Error::Inconclusive(_)) => {}
            Err(e) => return Err(e),
        }
    }
    out.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| coefficient_key(a).cmp(&coefficient_key(b)))
    });
    Ok(out)
}

fn run_factor(
    g_tilde: &KPoly,
    pi: &PiMorphism,
    epsilon: &Rational,
    opts: &PipelineOptions,
) -> Result<FactorRun> {
    let (a, h) = image_hypersurface(g_tilde, pi).map_err(|e| e.at_stage("image"))?;
    let description = build_z_projective(&a, epsilon, &opts.kappa, opts.budget)
        .map_err(|e| e.at_stage("exceptional"))?;
    let items: Vec<KPoly> = description.polynomials.iter().map(|t| t.poly.clone()).collect();
    let b0 = product(&pi.target_vars, &items);
    let b = pi.pullback(&b0)?;
    if b.is_zero() {
        return Err(Error::PipelineFailure {
            stage: "pullback".into(),
            reason: "B vanishes identically".into(),
        });
    }
    Ok(FactorRun {
        g_tilde: g_tilde.clone(),
        a,
        h,
        description,
        b0,
        b,
    })
}

pub fn degeneracy_locus(forms: &[KPoly], opts: &PipelineOptions) -> Result<PipelineReport> {
    let Some(first) = forms.first() else {
        return Err(Error::invalid("no forms given"));
    };
    let n = first.nvars().saturating_sub(1);
    let total: u32 = forms.iter().map(|f| f.total_degree()).sum();
    if total < n as u32 + 2 {
        return Err(Error::precondition(format!(
            "sum of degrees {total} is below n + 2 = {}",
            n + 2
        ))
        .at_stage("input"));
    }
    for (i, f) in forms.iter().enumerate() {
        let fz = factorize(f).map_err(|e| e.at_stage("input"))?;
        if fz.factors.len() != 1 || fz.factors[0].1 != 1 {
            return Err(Error::precondition(format!("form {} is not irreducible", i + 1)).at_stage("input"));
        }
    }
    let pi = build_pi(forms).map_err(|e| e.at_stage("pi"))?;
    let transversality = if opts.assert_transversal {
        "asserted"
    } else {
        check_transversal(forms).map_err(|e| e.at_stage("transversality"))?;
        "verified"
    };
    let g = jacobian_det(forms).map_err(|e| e.at_stage("jacobian"))?;
    let candidates = admissible_factors(&g, forms).map_err(|e| e.at_stage("factor"))?;
    if candidates.is_empty() {
        return Err(Error::PipelineFailure {
            stage: "factor".into(),
            reason: "no factor of the Jacobian is in weakly general position with the forms".into(),
        });
    }
    let epsilon = opts
        .epsilon
        .clone()
        .unwrap_or_else(|| Rational::new(1.into(), (4 * pi.common_degree).into()));
    let chosen: Vec<KPoly> = if opts.all_factors {
        candidates
    } else {
        candidates.into_iter().take(1).collect()
    };
    let runs: Vec<FactorRun> = chosen
        .par_iter()
        .map(|gt| run_factor(gt, &pi, &epsilon, opts))
        .collect::<Result<_>>()?;
    let bs: Vec<KPoly> = runs.iter().map(|r| r.b.clone()).collect();
    let b = product(first.vars(), &bs);
    let degree_bound = runs.iter().map(|r| r.b0.total_degree()).sum::<u32>() * pi.common_degree;
    let divisibility_check = runs.iter().all(|r| {
        pi.pullback(&r.a)
            .map(|p| p == &(&r.g_tilde * &r.g_tilde) * &r.h)
            .unwrap_or(false)
    });
    if !b.is_homogeneous() || b.total_degree() > degree_bound {
        return Err(Error::PipelineFailure {
            stage: "pullback".into(),
            reason: "B is not homogeneous of the bounded degree".into(),
        });
    }
    let budget_exhausted = runs.iter().any(|r| r.description.budget_exhausted);
    Ok(PipelineReport {
        g,
        pi,
        runs,
        b,
        degree_bound,
        divisibility_check,
        epsilon,
        budget: opts.budget,
        budget_exhausted,
        transversality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly_in;

    fn xs(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    fn ys(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("y{i}")).collect()
    }

    fn p(src: &str, vars: &[String]) -> KPoly {
        parse_poly_in(src, vars).unwrap()
    }

    fn worked_pair() -> Vec<KPoly> {
        vec![p("x0^2 + x1^2", &xs(2)), p("x0^2 + x0*x1 + x1^2", &xs(2))]
    }

    #[test]
    fn jacobian_of_worked_pair() {
        let g = jacobian_det(&worked_pair()).unwrap();
        assert_eq!(g, p("2*x0^2 - 2*x1^2", &xs(2)));
    }

    #[test]
    fn jacobian_examples() {
        let lin = vec![p("x0 + x1", &xs(2)), p("x0 - 2*x1", &xs(2))];
        assert_eq!(jacobian_det(&lin).unwrap(), p("-3", &xs(2)));
        let f = vec![p("x0", &xs(3)), p("x1", &xs(3)), p("x0^2 + x1^2 + x2^2", &xs(3))];
        assert_eq!(jacobian_det(&f).unwrap(), p("2*x2", &xs(3)));
        assert!(matches!(jacobian_det(&f[..2]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn exponents_of_pi() {
        let v = xs(3);
        let f = vec![p("x0", &v), p("x1", &v), p("x0^2 + x1^2 + x2^2", &v)];
        let pi = build_pi(&f).unwrap();
        assert_eq!(pi.exponents, vec![2, 2, 1]);
        assert_eq!(pi.common_degree, 2);
        let pi = build_pi(&worked_pair()).unwrap();
        assert_eq!((pi.exponents.clone(), pi.common_degree), (vec![1, 1], 2));
    }

    #[test]
    fn normal_form_is_remainder() {
        let v = xs(2);
        let g = p("x0 - x1", &v);
        assert_eq!(normal_form(&p("x0^2 + x1^2", &v), &g), p("2*x1^2", &v));
        let f = p("x0^3 + 5*x0*x1 + 1", &v);
        let r = normal_form(&f, &g);
        // f - r is a multiple of g
        assert!((&f - &r).div_exact(&g).is_some());
    }

    #[test]
    fn image_of_both_branches() {
        let pi = build_pi(&worked_pair()).unwrap();
        let (a, h) = image_hypersurface(&p("x0 - x1", &xs(2)), &pi).unwrap();
        assert_eq!(a, p("3*y0 - 2*y1", &ys(2)));
        assert!(h.is_constant());
        assert_eq!(pi.pullback(&a).unwrap(), p("(x0 - x1)^2", &xs(2)));
        let (a, _) = image_hypersurface(&p("x0 + x1", &xs(2)), &pi).unwrap();
        assert_eq!(a, p("y0 - 2*y1", &ys(2)));
        assert!(pi.pullback(&a).unwrap().div_exact(&p("(x0 + x1)^2", &xs(2))).is_some());
    }

    #[test]
    fn image_of_coordinate_component() {
        let v = xs(3);
        let f = vec![p("x0", &v), p("x1", &v), p("x0^2 + x1^2 + x2^2", &v)];
        let pi = build_pi(&f).unwrap();
        let (a, h) = image_hypersurface(&p("x2", &v), &pi).unwrap();
        assert_eq!(a, p("y0 + y1 - y2", &ys(3)));
        assert_eq!(h, p("-1", &v));
    }

    #[test]
    fn worked_pipeline() {
        let opts = PipelineOptions {
            budget: 10,
            ..Default::default()
        };
        let r = degeneracy_locus(&worked_pair(), &opts).unwrap();
        let run = r.first();
        assert_eq!(run.g_tilde, p("x0 - x1", &xs(2)));
        assert_eq!(run.b0, p("y0*y1*(3*y0 - 2*y1)", &ys(2)));
        assert_eq!(r.degree_bound, 6);
        assert_eq!(r.b.total_degree(), 6);
        assert!(r.divisibility_check);
        assert_eq!(r.epsilon, rat(1, 8));
        assert_eq!(r.transversality, "verified");
    }

    #[test]
    fn three_lines_rejected() {
        let v = xs(3);
        let f = vec![p("x0", &v), p("x1", &v), p("x2", &v)];
        let e = degeneracy_locus(&f, &PipelineOptions::default()).unwrap_err();
        assert!(matches!(e, Error::PreconditionViolated(_)));
    }

    #[test]
    fn tangent_conic_is_not_in_position() {
        let v = xs(3);
        let f = vec![p("x0", &v), p("x1", &v), p("x0*x2 - x1^2", &v)];
        let e = degeneracy_locus(&f, &PipelineOptions::default()).unwrap_err();
        assert!(matches!(e, Error::NotInPosition(_)), "{e:?}");
    }

    #[test]
    fn tangency_is_detected() {
        // The conic meets x0 = 0 in (x1 - x2)^2, tangent at [0:1:1].
        let v = xs(3);
        let f = vec![
            p("x0", &v),
            p("x1 + x2 + x0", &v),
            p("x1^2 - 2*x1*x2 + x2^2 + x0*x1 + x0*x2", &v),
        ];
        let e = check_transversal(&f).unwrap_err();
        assert!(matches!(e, Error::PreconditionViolated(_)), "{e:?}");
    }

    #[test]
    fn smooth_transversal_conics() {
        let v = xs(3);
        let f = vec![p("x0", &v), p("x1", &v), p("x0^2 + x1^2 - x2^2 + x0*x1", &v)];
        assert!(check_transversal(&f).is_ok());
    }
}

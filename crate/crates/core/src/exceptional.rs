//! Exceptional sets: the parameter choice `m` for the gcd estimate, the
//! multi-step obstruction polynomial `H`, the projective set `Z ∪ W`, and
//! the explicit curve list in the plane case.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::factor::{factor_order, factorize};
use crate::algebra::gcd::is_squarefree;
use crate::algebra::laurent::{monomial_transform, Direction};
use crate::algebra::mpoly::KPoly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::rational::{from_bigint, Rational};
use crate::algebra::resultant::resultant;
use crate::error::{Error, Result};
use crate::lattice::{bezout_pair, UnimodularEnumerator, UnimodularMatrix};
use crate::nullstellensatz::check_weak_general_position;
use crate::specialization::compute_sigma_k;

pub const SEARCH_CAP: u64 = 1_000_000_000;
const LINEAR_LIMIT: u64 = 1 << 20;
/// Largest support for which all subsums are listed.
const MAX_SUBSUM_TERMS: usize = 16;

pub fn binomial(a: u64, k: u64) -> BigInt {
    if k > a {
        return BigInt::zero();
    }
    let k = k.min(a - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdParams {
    pub n: u32,
    pub d: u32,
    pub epsilon: Rational,
    pub kappa: Rational,
    pub l: Option<u64>,
    pub m: u64,
    pub c: BigInt,
    pub big_m: BigInt,
    pub m_prime: BigInt,
    /// `C₁ = m·ε`.
    pub c1: Rational,
    pub lhs1: Rational,
    pub rhs1: Rational,
    pub lhs2: Rational,
    pub rhs2: Rational,
    /// False when `m` came from the galloping phase, where minimality is
    /// only checked against `m − 1`.
    pub exhaustive: bool,
}

impl GcdParams {
    pub fn holds(&self) -> bool {
        self.lhs1 <= self.rhs1 && self.lhs2 <= self.rhs2
    }
}

impl fmt::Display for GcdParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "d = {}", self.d)?;
        writeln!(f, "epsilon = {}", self.epsilon)?;
        writeln!(f, "kappa = {}", self.kappa)?;
        if let Some(l) = self.l {
            writeln!(f, "L = {l}")?;
        }
        writeln!(f, "m = {}", self.m)?;
        writeln!(f, "M' = {}", self.m_prime)?;
        writeln!(f, "M = {}", self.big_m)?;
        writeln!(f, "c = {}", self.c)?;
        writeln!(f, "C1 = {}", self.c1)?;
        writeln!(f, "inequality 1: {} <= {}", self.lhs1, self.rhs1)?;
        write!(f, "inequality 2: {} <= {}", self.lhs2, self.rhs2)
    }
}

struct Eval {
    c: BigInt,
    big_m: BigInt,
    m_prime: BigInt,
    lhs1: Rational,
    lhs2: Rational,
}

fn ceil_kappa_pow(kappa: &Rational, m: u64, n: u32) -> BigInt {
    let p = kappa * from_bigint(BigInt::from(m).pow(n.saturating_sub(2)));
    p.ceil().to_integer()
}

fn evaluate(n: u32, d: u32, kappa: &Rational, m: u64) -> Eval {
    let (n64, d64) = (n as u64, d as u64);
    let c: BigInt = 2 * binomial(m + n64 - d64, n64 + 1) - binomial(m + n64 - 2 * d64, n64 + 1);
    let big_m: BigInt = 2 * binomial(m + n64 - d64, n64) - binomial(m + n64 - 2 * d64, n64);
    let m_prime = ceil_kappa_pow(kappa, m, n);
    let bm = BigInt::from(m);
    let denom = from_bigint(big_m.clone());
    let lhs1 = from_bigint(&m_prime * &bm * BigInt::from(n)) / denom.clone();
    let first = Rational::new(&bm * binomial(m + n64, n64), BigInt::from(n + 1));
    let lhs2 = (first - from_bigint(c.clone()) - from_bigint(&m_prime * &bm)) / denom;
    Eval {
        c,
        big_m,
        m_prime,
        lhs1,
        lhs2,
    }
}

fn rhs(n: u32, eps: &Rational) -> (Rational, Rational) {
    (
        eps / Rational::from_integer(4.into()),
        eps / Rational::from_integer(BigInt::from(4 * (n + 1))),
    )
}

fn passes(e: &Eval, r: &(Rational, Rational)) -> bool {
    e.lhs1 <= r.0 && e.lhs2 <= r.1
}

/// Smallest `m ≥ 2d` satisfying both inequalities. Linear scan up to 2^20,
/// then doubling and bisection up to [`SEARCH_CAP`].
pub fn gcd_params(
    n: u32,
    d: u32,
    epsilon: &Rational,
    kappa: &Rational,
    l: Option<u64>,
) -> Result<GcdParams> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    if d < 1 {
        return Err(Error::invalid("d must be at least 1"));
    }
    if !epsilon.is_positive() || !kappa.is_positive() {
        return Err(Error::invalid("epsilon and kappa must be positive"));
    }
    let r = rhs(n, epsilon);
    let ok = |m: u64| passes(&evaluate(n, d, kappa, m), &r);
    let start = 2 * d as u64;
    let mut found = None;
    let mut exhaustive = true;
    let mut m = start;
    while m <= LINEAR_LIMIT.max(start) {
        if ok(m) {
            found = Some(m);
            break;
        }
        m += 1;
    }
    if found.is_none() {
        exhaustive = false;
        let mut lo = m - 1;
        let mut hi = None;
        let mut probe = m.saturating_mul(2).min(SEARCH_CAP);
        loop {
            if ok(probe) {
                hi = Some(probe);
                break;
            }
            if probe >= SEARCH_CAP {
                break;
            }
            lo = probe;
            probe = probe.saturating_mul(2).min(SEARCH_CAP);
        }
        let Some(mut hi) = hi else {
            let e = evaluate(n, d, kappa, SEARCH_CAP);
            return Err(Error::resource(format!(
                "no m up to {SEARCH_CAP}; residuals at the cap: {} and {}",
                e.lhs1 - &r.0,
                e.lhs2 - &r.1
            )));
        };
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        found = Some(hi);
    }
    let m = found.expect("set above");
    let e = evaluate(n, d, kappa, m);
    Ok(GcdParams {
        n,
        d,
        epsilon: epsilon.clone(),
        kappa: kappa.clone(),
        l,
        m,
        c: e.c,
        big_m: e.big_m,
        m_prime: e.m_prime,
        c1: Rational::from_integer(BigInt::from(m)) * epsilon,
        lhs1: e.lhs1,
        rhs1: r.0,
        lhs2: e.lhs2,
        rhs2: r.1,
        exhaustive,
    })
}

/// One factor of `H` and the matrices `A_1, A_2′, …, A_s′` behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HFactor {
    pub step: usize,
    pub matrices: Vec<UnimodularMatrix>,
    pub poly: KPoly,
}

impl HFactor {
    pub fn tag(&self) -> String {
        let ms: Vec<String> = self
            .matrices
            .iter()
            .map(|a| {
                let rows: Vec<String> = a
                    .rows()
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                format!("[{}]", rows.join(";"))
            })
            .collect();
        format!("H step {} {}", self.step, ms.join(" "))
    }
}

#[derive(Clone, Debug)]
pub struct HResult {
    pub vars: Vec<String>,
    pub factors: Vec<HFactor>,
    /// `M_s + n` for each step.
    pub bounds: Vec<i64>,
    /// Tuples examined per step.
    pub examined: Vec<usize>,
    pub budget_exhausted: bool,
}

impl HResult {
    pub fn product(&self) -> KPoly {
        let mut h = KPoly::one(self.vars.clone());
        for f in &self.factors {
            h = &h * &f.poly;
        }
        h
    }
}

fn check_input(g: &KPoly) -> Result<()> {
    if g.is_constant() {
        return Err(Error::precondition("polynomial is constant"));
    }
    if g.has_monomial_factor() {
        return Err(Error::precondition("polynomial has a monomial factor"));
    }
    if !is_squarefree(g) {
        return Err(Error::precondition("polynomial has a repeated factor"));
    }
    Ok(())
}

/// `C_s = A_s ⋯ A_1` with `A_i = I_{i-1} ⊕ A_i′`.
pub fn compose_chain(chain: &[UnimodularMatrix]) -> Result<UnimodularMatrix> {
    let mut c = chain
        .first()
        .cloned()
        .ok_or_else(|| Error::invalid("empty matrix chain"))?;
    let n = c.dim();
    for (i, a) in chain.iter().enumerate().skip(1) {
        if a.dim() + i != n {
            return Err(Error::invalid(format!(
                "matrix {} has size {}, expected {}",
                i + 1,
                a.dim(),
                n - i
            )));
        }
        c = a.pad_identity(i).mul(&c)?;
    }
    Ok(c)
}

/// Pulls a polynomial in `Λ_1..Λ_s` back along `Λ_i = x^{row_i}` and clears
/// the monomial denominator (monomial factors already present are kept).
fn pull_back(p: &KPoly, rows: &[Vec<i64>], xvars: &[String]) -> KPoly {
    let mut terms: BTreeMap<Vec<i64>, RatFunc> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut x = vec![0i64; xvars.len()];
        for (i, &k) in e.iter().enumerate() {
            for (xj, r) in x.iter_mut().zip(&rows[i]) {
                *xj += k as i64 * r;
            }
        }
        let slot = terms.entry(x).or_insert_with(RatFunc::zero);
        *slot += c;
    }
    terms.retain(|_, c| !c.is_zero());
    let mut shift = vec![0i64; xvars.len()];
    for e in terms.keys() {
        for (s, &x) in shift.iter_mut().zip(e) {
            *s = (*s).min(x);
        }
    }
    let mut out = KPoly::zero(xvars.to_vec());
    for (e, c) in terms {
        out.add_term(e.iter().zip(&shift).map(|(x, s)| (x - s) as u32).collect(), c);
    }
    out.normalize()
}

/// The factors `H_s′` contributed by one chain `(A_1, A_2′, …, A_s′)`.
pub fn h_factors_for_chain(g: &KPoly, chain: &[UnimodularMatrix]) -> Result<Vec<KPoly>> {
    let n = g.nvars();
    let s = chain.len();
    if s == 0 || s >= n {
        return Err(Error::invalid("chain length must be between 1 and n - 1"));
    }
    let c = compose_chain(chain)?;
    if c.dim() != n {
        return Err(Error::invalid("matrix size does not match the polynomial"));
    }
    let mut names: Vec<String> = (1..=s).map(|i| format!("L{i}")).collect();
    names.extend((s + 1..=n).map(|i| format!("X{i}")));
    let core = monomial_transform(g, &c, Direction::Forward, Some(names.clone()))?.core;
    let lnames = names[..s].to_vec();
    let params: Vec<usize> = (0..s).collect();
    let gens: Vec<KPoly> = if (s..n).all(|i| core.degree_in(i) == 0) {
        vec![core.with_vars(&lnames)?]
    } else {
        let sigma = compute_sigma_k(&core, &params)?;
        sigma
            .generators
            .iter()
            .map(|q| {
                if q.nvars() > s {
                    KPoly::unlift_t(q, s)
                } else {
                    q.to_kpoly()
                }
            })
            .collect()
    };
    let rows = &c.rows()[..s];
    let mut out: Vec<KPoly> = Vec::new();
    for gen in gens {
        let h = pull_back(&gen, rows, g.vars());
        if !h.is_constant() && !out.contains(&h) {
            out.push(h);
        }
    }
    Ok(out)
}

fn smallest_root_at_least(budget: usize, s: usize) -> usize {
    let mut k = 1usize;
    while k.checked_pow(s as u32).is_some_and(|p| p < budget) {
        k += 1;
    }
    k
}

/// Chains for step `s`: the first `k` matrices of each enumerator, in
/// lexicographic order of indices, cut at `budget`. The flag reports whether
/// anything was left out.
fn chains_for_step(n: usize, bounds: &[i64], budget: usize) -> (Vec<Vec<UnimodularMatrix>>, bool) {
    let s = bounds.len();
    if budget == 0 {
        return (Vec::new(), true);
    }
    let k = smallest_root_at_least(budget, s);
    let mut truncated = false;
    let lists: Vec<Vec<UnimodularMatrix>> = bounds
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let mut v: Vec<UnimodularMatrix> = UnimodularEnumerator::new(n - i, b).take(k + 1).collect();
            if v.len() > k {
                v.truncate(k);
                truncated = true;
            }
            v
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; s];
    'outer: loop {
        if out.len() == budget {
            truncated |= idx.iter().zip(&lists).any(|(&i, l)| i < l.len());
            break;
        }
        out.push(idx.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect());
        for pos in (0..s).rev() {
            if idx[pos] + 1 < lists[pos].len() {
                idx[pos] += 1;
                for later in idx.iter_mut().skip(pos + 1) {
                    *later = 0;
                }
                continue 'outer;
            }
        }
        break;
    }
    (out, truncated)
}

/// The obstruction polynomial `H` (as a list of factors) for an affine
/// polynomial `g` in `n` variables.
pub fn build_h(g: &KPoly, epsilon: &Rational, kappa: &Rational, budget: usize) -> Result<HResult> {
    check_input(g)?;
    let n = g.nvars();
    let mut result = HResult {
        vars: g.vars().to_vec(),
        factors: Vec::new(),
        bounds: Vec::new(),
        examined: Vec::new(),
        budget_exhausted: false,
    };
    if n < 2 {
        return Ok(result);
    }
    let deg = g.total_degree();
    for s in 1..n {
        let p = gcd_params((n - s + 1) as u32, deg, epsilon, kappa, None)?;
        let m_s = (p.m.max(2 * deg as u64)) as i64;
        result.bounds.push(m_s + n as i64);
        let (chains, truncated) = chains_for_step(n, &result.bounds, budget);
        result.budget_exhausted |= truncated;
        result.examined.push(chains.len());
        let found: Vec<Vec<KPoly>> = chains
            .par_iter()
            .map(|ch| h_factors_for_chain(g, ch))
            .collect::<Result<_>>()?;
        for (ch, polys) in chains.into_iter().zip(found) {
            for poly in polys {
                if !result.factors.iter().any(|f| f.poly == poly) {
                    result.factors.push(HFactor {
                        step: s,
                        matrices: ch.clone(),
                        poly,
                    });
                }
            }
        }
    }
    Ok(result)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescriptionKind {
    FullZ,
    N2List,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tagged {
    pub poly: KPoly,
    pub tag: String,
}

#[derive(Clone, Debug)]
pub struct ExceptionalDescription {
    pub kind: DescriptionKind,
    pub polynomials: Vec<Tagged>,
    pub budget_exhausted: bool,
    pub params: Option<GcdParams>,
    pub h: Option<HResult>,
    pub n2: Option<N2Data>,
}

impl ExceptionalDescription {
    /// Product of all stored polynomials.
    pub fn product(&self) -> Option<KPoly> {
        let first = self.polynomials.first()?;
        let mut acc = KPoly::one(first.poly.vars().to_vec());
        for t in &self.polynomials {
            acc = &acc * &t.poly;
        }
        Some(acc)
    }
}

/// Forms `Σ_{i∈J} α_i x^i` for every nonempty subset `J` of the support,
/// the full form included. Normalized and deduplicated.
pub fn subsum_forms(f: &KPoly) -> Result<Vec<(KPoly, Vec<usize>)>> {
    let terms = f.sorted_terms();
    if terms.len() > MAX_SUBSUM_TERMS {
        return Err(Error::resource(format!(
            "{} terms exceed the subsum limit {MAX_SUBSUM_TERMS}",
            terms.len()
        )));
    }
    let mut out: Vec<(KPoly, Vec<usize>)> = Vec::new();
    let mut masks: Vec<u32> = (1..1u32 << terms.len()).collect();
    let bits = |m: &u32| -> Vec<u32> { (0..32).filter(|i| m >> i & 1 == 1).collect() };
    masks.sort_by_key(|m| (m.count_ones(), bits(m)));
    for mask in masks {
        let idx: Vec<usize> = (0..terms.len()).filter(|i| mask >> i & 1 == 1).collect();
        let p = KPoly::from_terms(
            f.vars().to_vec(),
            idx.iter().map(|&i| (terms[i].0.clone(), terms[i].1.clone())),
        )
        .normalize();
        if !out.iter().any(|(q, _)| *q == p) {
            out.push((p, idx));
        }
    }
    Ok(out)
}

/// `Z ∪ W` for a homogeneous `f` in `x_0..x_n`: the homogenized factors of
/// `H` for `f(1, x_1, …, x_n)`, then the subsum forms.
pub fn build_z_projective(
    f: &KPoly,
    epsilon: &Rational,
    kappa: &Rational,
    budget: usize,
) -> Result<ExceptionalDescription> {
    if !f.is_homogeneous() {
        return Err(Error::invalid("form is not homogeneous"));
    }
    check_input(f)?;
    if f.nvars() < 2 {
        return Err(Error::invalid("need at least two homogeneous variables"));
    }
    let g = f.dehomogenize(0);
    let x0 = f.vars()[0].clone();
    let (h, params) = if g.nvars() >= 2 {
        let h = build_h(&g, epsilon, kappa, budget)?;
        let p = gcd_params(g.nvars() as u32, g.total_degree(), epsilon, kappa, None)?;
        (Some(h), Some(p))
    } else {
        (None, None)
    };
    let mut polys: Vec<Tagged> = Vec::new();
    if let Some(h) = &h {
        for fac in &h.factors {
            let hom = fac.poly.homogenize(&x0, 0).normalize();
            if !polys.iter().any(|t| t.poly == hom) {
                polys.push(Tagged {
                    poly: hom,
                    tag: fac.tag(),
                });
            }
        }
    }
    for (w, idx) in subsum_forms(f)? {
        if !polys.iter().any(|t| t.poly == w) {
            let list: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
            polys.push(Tagged {
                poly: w,
                tag: format!("W terms {}", list.join(",")),
            });
        }
    }
    Ok(ExceptionalDescription {
        kind: DescriptionKind::FullZ,
        polynomials: polys,
        budget_exhausted: h.as_ref().is_some_and(|h| h.budget_exhausted),
        params,
        h,
        n2: None,
    })
}

/// An irreducible factor of a polynomial in `L`, with its root when linear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFactor {
    pub factor: KPoly,
    pub value: Option<RatFunc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct N2Data {
    pub relation: (i64, i64),
    pub bezout: (i64, i64),
    /// `G(1, X, Y) = Λ^{M_1} T^{M_2} · B(Λ, T)` as exponents of `(Λ, T)`.
    pub monomial_part: Vec<i64>,
    pub b: KPoly,
    pub gamma: Vec<RootFactor>,
    pub alpha: Vec<RootFactor>,
    pub r_set: Vec<RootFactor>,
}

impl N2Data {
    pub fn all_roots(&self) -> impl Iterator<Item = &RootFactor> {
        self.gamma.iter().chain(&self.alpha).chain(&self.r_set)
    }
}

fn lvars() -> Vec<String> {
    vec!["L".to_string()]
}

fn root_factors(p: &KPoly) -> Result<Vec<RootFactor>> {
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let fz = factorize(p)?;
    let mut out: Vec<RootFactor> = fz
        .factors
        .into_iter()
        .map(|(h, _)| {
            let h = h.normalize();
            let value = (h.degree_in(0) == 1).then(|| {
                let c = h.coeffs_in(0);
                let c0 = c[0].as_constant().unwrap_or_else(RatFunc::zero);
                let c1 = c[1].as_constant().expect("nonzero leading coefficient");
                -(c0 / c1)
            });
            RootFactor { factor: h, value }
        })
        .collect();
    out.sort_by(|a, b| factor_order(&a.factor, &b.factor));
    Ok(out)
}

fn push_unique(list: &mut Vec<RootFactor>, items: Vec<RootFactor>) {
    for r in items {
        if !list.iter().any(|x| x.factor == r.factor) {
            list.push(r);
        }
    }
}

/// Drops leading `T`-coefficients divisible by `h`, giving `B(λ, T)` for the
/// roots `λ` of `h`.
fn reduce_mod_root(b: &KPoly, h: &KPoly) -> Result<Vec<KPoly>> {
    let mut coeffs: Vec<KPoly> = b
        .coeffs_in(1)
        .into_iter()
        .map(|c| c.with_vars(&lvars()))
        .collect::<Result<_>>()?;
    while coeffs.last().is_some_and(|c| c.is_zero() || h.divides(c)) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Whether `B(λ, T)` has a repeated factor for the roots `λ` of `h`
/// (irreducible in `L`, and `h ∤ B(L, 0)`).
fn repeated_at_root(b: &KPoly, h: &KPoly) -> Result<bool> {
    let coeffs = reduce_mod_root(b, h)?;
    if coeffs.is_empty() {
        // B(λ, T) vanishes identically.
        return Ok(true);
    }
    if coeffs.len() < 3 {
        return Ok(false);
    }
    let vars = vec!["L".to_string(), "T".to_string()];
    let lifted: Vec<KPoly> = coeffs
        .iter()
        .map(|c| c.with_vars(&vars))
        .collect::<Result<_>>()?;
    let bl = KPoly::from_coeffs_in(vars, 1, &lifted);
    let r = resultant(&bl, &bl.partial(1), 1)?.with_vars(&lvars())?;
    Ok(h.divides(&r))
}

/// γ, α and ℛ for `B(Λ, T)` in the variables `(L, T)`.
pub fn n2_lists(b: &KPoly) -> Result<(Vec<RootFactor>, Vec<RootFactor>, Vec<RootFactor>)> {
    if b.nvars() != 2 {
        return Err(Error::invalid("B must be in two variables"));
    }
    let coeffs: Vec<KPoly> = b
        .coeffs_in(1)
        .into_iter()
        .map(|c| c.with_vars(&lvars()))
        .collect::<Result<_>>()?;
    let b0 = coeffs.first().cloned().unwrap_or_else(|| KPoly::zero(lvars()));
    if b0.is_zero() {
        return Err(Error::precondition("T divides B"));
    }
    let gamma = root_factors(&b0)?;
    let mut alpha = Vec::new();
    if b.degree_in(1) > 0 {
        let res = resultant(b, &b.partial(1), 1)?.with_vars(&lvars())?;
        if res.is_zero() {
            return Err(Error::precondition("B has a repeated factor"));
        }
        for r in root_factors(&res)? {
            if r.factor.divides(&b0) || repeated_at_root(b, &r.factor)? {
                alpha.push(r);
            }
        }
    }
    let mut r_set = Vec::new();
    let l_itself = KPoly::var(lvars(), 0);
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        for (sub, _) in subsum_forms(c)? {
            let roots = root_factors(&sub)?
                .into_iter()
                .filter(|r| r.factor != l_itself)
                .collect();
            push_unique(&mut r_set, roots);
        }
    }
    r_set.sort_by(|a, b| factor_order(&a.factor, &b.factor));
    Ok((gamma, alpha, r_set))
}

/// `B(Λ, T)` for `G(1, X, Y)` under `X = Λ^a T^{n2}`, `Y = Λ^b T^{-n1}`.
pub fn n2_transform(g: &KPoly, n1: i64, n2: i64) -> Result<(KPoly, Vec<i64>, (i64, i64))> {
    if g.nvars() != 3 {
        return Err(Error::invalid("expected a form in x0, x1, x2"));
    }
    let (a, b) = bezout_pair(n1, n2).map_err(|e| Error::precondition(e.to_string()))?;
    let m = UnimodularMatrix::new(vec![vec![n1, n2], vec![b, -a]])?;
    let g1 = g.dehomogenize(0);
    let lf = monomial_transform(&g1, &m, Direction::Forward, Some(vec!["L".into(), "T".into()]))?;
    Ok((lf.core, lf.monomial_part, (a, b)))
}

/// The homogenized curve `h(x1^{n1} x2^{n2} / x0^{n1+n2}) = 0` cleared of
/// denominators.
pub fn curve_for_factor(h: &KPoly, n1: i64, n2: i64, vars: &[String]) -> KPoly {
    pull_back(h, &[vec![-(n1 + n2), n1, n2]], vars)
}

/// Curves and root data for the plane case with relation `(n1, n2)`.
pub fn build_z_n2(g: &KPoly, n1: i64, n2: i64) -> Result<ExceptionalDescription> {
    if g.nvars() != 3 || !g.is_homogeneous() {
        return Err(Error::invalid("expected a homogeneous form in x0, x1, x2"));
    }
    check_input(g)?;
    let coords: Vec<KPoly> = (0..3).map(|i| KPoly::var(g.vars().to_vec(), i)).collect();
    let mut family = vec![g.clone()];
    family.extend(coords);
    match check_weak_general_position(&family) {
        Ok(_) => {}
        Err(Error::NotInPosition(m)) | Err(Error::Inconclusive(m)) => {
            return Err(Error::precondition(format!(
                "not in weakly general position with the coordinate lines: {m}"
            )))
        }
        Err(e) => return Err(e),
    }
    let (b, monomial_part, bez) = n2_transform(g, n1, n2)?;
    let (gamma, alpha, r_set) = n2_lists(&b)?;
    let data = N2Data {
        relation: (n1, n2),
        bezout: bez,
        monomial_part,
        b,
        gamma,
        alpha,
        r_set,
    };
    let mut polys: Vec<Tagged> = Vec::new();
    let l_itself = KPoly::var(lvars(), 0);
    for (label, list) in [("gamma", &data.gamma), ("alpha", &data.alpha), ("R", &data.r_set)] {
        for r in list.iter().filter(|r| r.factor != l_itself) {
            let curve = curve_for_factor(&r.factor, n1, n2, g.vars());
            if polys.iter().any(|t| t.poly == curve) {
                continue;
            }
            let tag = match &r.value {
                Some(v) => format!("{label} ({n1},{n2}) lambda = {v}"),
                None => format!("{label} ({n1},{n2}) root of {}", r.factor),
            };
            polys.push(Tagged { poly: curve, tag });
        }
    }
    Ok(ExceptionalDescription {
        kind: DescriptionKind::N2List,
        polynomials: polys,
        budget_exhausted: false,
        params: None,
        h: None,
        n2: Some(data),
    })
}

/// Whether `B(λ, T)` is nonzero, free of the factor `T` and squarefree.
pub fn b_specialization_ok(b: &KPoly, lambda: &RatFunc) -> bool {
    let s = b.subst_value(0, lambda);
    let Ok(s) = s.with_vars(&["T".to_string()]) else {
        return false;
    };
    !s.is_zero() && !s.has_monomial_factor() && is_squarefree(&s)
}

//! Weak general position and effective Nullstellensatz certificates
//! `x_j^s · R = Σ_i P_ji · Q_i` for `n+1` homogeneous forms in `n+1`
//! variables.
//!
//! Both the position test and the certificate search are Macaulay-matrix
//! computations: the forms `Q_0..Q_n` have only the trivial common zero iff
//! every monomial of degree `Σ(d_i − 1) + 1` lies in their ideal.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::algebra::field::Field;
use crate::algebra::mpoly::{monomials_of_degree, KPoly, Monomial, MultiPoly, QPoly};
use crate::algebra::parse::parse_poly_line;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::rational::{height_order, Rational};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};

/// Default number of sample points tried for a position witness.
pub const WITNESS_BUDGET: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionWitness {
    /// Parameter value at which every `n+1` of the forms have only the
    /// trivial common zero.
    pub z0: Rational,
    /// Sample points examined, including the witness.
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate<C: Field> {
    pub vars: Vec<String>,
    pub s: u32,
    pub r: C,
    /// `p[j][i]` multiplies `Q_i` in the identity for `x_j`.
    pub p: Vec<Vec<MultiPoly<C>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub reason: Option<String>,
}

impl Verification {
    fn pass() -> Self {
        Verification {
            ok: true,
            reason: None,
        }
    }

    fn fail(reason: impl Into<String>) -> Self {
        Verification {
            ok: false,
            reason: Some(reason.into()),
        }
    }
}

fn validate_forms<C: Field>(q: &[MultiPoly<C>]) -> Result<()> {
    let Some(first) = q.first() else {
        return Err(Error::invalid("no forms given"));
    };
    for (i, f) in q.iter().enumerate() {
        if f.vars() != first.vars() {
            return Err(Error::invalid("forms use different variable lists"));
        }
        if f.is_constant() {
            return Err(Error::invalid(format!("form {i} is constant")));
        }
        if !f.is_homogeneous() {
            let d: Vec<String> = f.degrees_present().iter().map(|d| d.to_string()).collect();
            return Err(Error::invalid(format!(
                "form {i} is not homogeneous (mixed degrees {})",
                d.join(",")
            )));
        }
    }
    Ok(())
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn to_sparse<C: Field>(p: &MultiPoly<C>, index: &HashMap<Monomial, usize>) -> SparseVec<C> {
    p.terms().map(|(e, c)| (index[e], c.clone())).collect()
}

/// Whether `n+1` forms in `n+1` variables have only the trivial common zero
/// over the algebraic closure of the coefficient field.
pub fn only_trivial_zero<C: Field>(forms: &[&MultiPoly<C>]) -> bool {
    let nv = forms[0].nvars();
    if forms.len() != nv {
        return false;
    }
    let big_d: u32 = forms.iter().map(|f| f.total_degree() - 1).sum::<u32>() + 1;
    macaulay_full_rank(forms, big_d)
}

/// Whether forms in `n+1` variables have no common projective zero, for any
/// number of forms. With more forms than variables the test degree is
/// `(n+1)(d_max - 1) + 1`, past which `n+1` generic combinations already
/// generate everything.
pub fn no_common_zero<C: Field>(forms: &[&MultiPoly<C>]) -> bool {
    let nonzero: Vec<&MultiPoly<C>> = forms.iter().copied().filter(|f| !f.is_zero()).collect();
    if nonzero.iter().any(|f| f.is_constant()) {
        return true;
    }
    let Some(first) = nonzero.first() else {
        return false;
    };
    let nv = first.nvars();
    if nonzero.len() < nv {
        return false;
    }
    if nonzero.len() == nv {
        return only_trivial_zero(&nonzero);
    }
    let dmax = nonzero.iter().map(|f| f.total_degree()).max().unwrap_or(1);
    let big_d = nv as u32 * (dmax - 1) + 1;
    macaulay_full_rank(&nonzero, big_d)
}

/// Number of monomials of degree `d` in `nv` variables.
pub fn monomial_count(nv: usize, d: u32) -> u128 {
    let mut r: u128 = 1;
    for i in 1..nv as u128 {
        r = r * (d as u128 + i) / i;
    }
    r
}

fn macaulay_full_rank<C: Field>(forms: &[&MultiPoly<C>], big_d: u32) -> bool {
    let nv = forms[0].nvars();
    let monos = monomials_of_degree(nv, big_d);
    let index: HashMap<Monomial, usize> =
        monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = Echelon::new(false);
    let mut tag = 0;
    for f in forms {
        if f.total_degree() > big_d {
            continue;
        }
        for mu in monomials_of_degree(nv, big_d - f.total_degree()) {
            ech.insert(to_sparse(&f.mul_monomial(&mu), &index), tag);
            tag += 1;
            if ech.rank() == monos.len() {
                return true;
            }
        }
    }
    false
}

fn all_subsets_ok<C: Field>(forms: &[MultiPoly<C>]) -> Option<Vec<usize>> {
    let nv = forms[0].nvars();
    for sub in subsets(forms.len(), nv) {
        let chosen: Vec<&MultiPoly<C>> = sub.iter().map(|&i| &forms[i]).collect();
        if !only_trivial_zero(&chosen) {
            return Some(sub);
        }
    }
    None
}

pub fn check_weak_general_position<C: Field>(q: &[MultiPoly<C>]) -> Result<PositionWitness> {
    check_weak_general_position_with_budget(q, WITNESS_BUDGET)
}

/// Searches `z0` in ascending height order. Forms without the parameter are
/// decided at the first admissible point. With the parameter, a failing
/// search is followed by the same test over ℚ(t): a deficient generic rank
/// proves a common zero at every `z0`.
pub fn check_weak_general_position_with_budget<C: Field>(
    q: &[MultiPoly<C>],
    budget: usize,
) -> Result<PositionWitness> {
    validate_forms(q)?;
    let param = q.iter().any(|f| f.involves_param());
    let mut samples = 0;
    let mut last_failure: Option<Vec<usize>> = None;
    for z0 in height_order() {
        if samples >= budget {
            break;
        }
        samples += 1;
        let evaluated: Option<Vec<QPoly>> = q.iter().map(|f| f.eval_param(&z0)).collect();
        let Some(evaluated) = evaluated else {
            continue;
        };
        // Degree must survive specialization.
        if evaluated
            .iter()
            .zip(q)
            .any(|(e, f)| e.is_zero() || e.total_degree() != f.total_degree())
        {
            continue;
        }
        match all_subsets_ok(&evaluated) {
            None => return Ok(PositionWitness { z0, samples }),
            Some(sub) => {
                if !param {
                    return Err(Error::NotInPosition(format!(
                        "forms {sub:?} have a nontrivial common zero"
                    )));
                }
                last_failure = Some(sub);
            }
        }
    }
    if param {
        if let Some(sub) = all_subsets_ok(q) {
            return Err(Error::NotInPosition(format!(
                "forms {sub:?} have a nontrivial common zero for every parameter value"
            )));
        }
    }
    Err(Error::Inconclusive(format!(
        "no witness among {samples} sample points (last failing subset {last_failure:?})"
    )))
}

/// Outcome of the solve at one exponent `s`.
enum Attempt<C: Field> {
    Solved(Vec<Vec<MultiPoly<C>>>),
    Failed { j: usize },
}

fn attempt<C: Field>(q: &[MultiPoly<C>], s: u32) -> Attempt<C> {
    let vars = q[0].vars().to_vec();
    let nv = vars.len();
    let monos = monomials_of_degree(nv, s);
    let index: HashMap<Monomial, usize> =
        monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut gens: Vec<(usize, Monomial)> = Vec::new();
    let mut ech = Echelon::new(true);
    for (i, f) in q.iter().enumerate() {
        let d = f.total_degree();
        if d > s {
            continue;
        }
        for mu in monomials_of_degree(nv, s - d) {
            ech.insert(to_sparse(&f.mul_monomial(&mu), &index), gens.len());
            gens.push((i, mu));
        }
    }
    let mut p = Vec::with_capacity(nv);
    for j in 0..nv {
        let mut target = vec![0u32; nv];
        target[j] = s;
        let mut rhs = SparseVec::new();
        rhs.insert(index[&target], C::one());
        let Some(combo) = ech.express(rhs) else {
            return Attempt::Failed { j };
        };
        let mut row: Vec<MultiPoly<C>> = vec![MultiPoly::zero(vars.clone()); q.len()];
        for (tag, c) in combo {
            let (i, mu) = &gens[tag];
            row[*i].add_term(mu.clone(), c);
        }
        p.push(row);
    }
    Attempt::Solved(p)
}

/// Default cap on `s`: the Macaulay bound `Σ deg Q_i − n`.
pub fn macaulay_bound<C: Field>(q: &[MultiPoly<C>]) -> u32 {
    let total: u32 = q.iter().map(|f| f.total_degree()).sum();
    total.saturating_sub(q.len() as u32 - 1).max(1)
}

pub fn find_certificate<C: Field>(q: &[MultiPoly<C>]) -> Result<Certificate<C>> {
    find_certificate_with_cap(q, None)
}

/// Smallest `s` for which every `x_j^s` lies in the ideal, with the
/// particular solution fixed by the elimination order. `R` and the `P_ji`
/// are scaled together so that all coefficients are integral (in ℤ[t] over
/// ℚ(t)) with content 1 and `R` has positive leading coefficient.
pub fn find_certificate_with_cap<C: Field>(
    q: &[MultiPoly<C>],
    cap: Option<u32>,
) -> Result<Certificate<C>> {
    validate_forms(q)?;
    let nv = q[0].nvars();
    if q.len() != nv {
        return Err(Error::invalid(format!(
            "need {nv} forms in {nv} variables, got {}",
            q.len()
        )));
    }
    check_weak_general_position(q)?;
    let cap = cap.unwrap_or_else(|| macaulay_bound(q));
    let start = q.iter().map(|f| f.total_degree()).min().unwrap_or(1);
    for s in start..=cap {
        if let Attempt::Solved(p) = attempt(q, s) {
            return Ok(normalize_certificate(q[0].vars().to_vec(), s, p));
        }
    }
    Err(Error::resource(format!(
        "no certificate with s <= {cap}"
    )))
}

/// Whether the system is unsolvable at `s`; the index of the first
/// `x_j` whose power is not in the ideal.
pub fn fails_at<C: Field>(q: &[MultiPoly<C>], s: u32) -> Option<usize> {
    if s == 0 {
        return Some(0);
    }
    match attempt(q, s) {
        Attempt::Solved(_) => None,
        Attempt::Failed { j } => Some(j),
    }
}

fn normalize_certificate<C: Field>(
    vars: Vec<String>,
    s: u32,
    p: Vec<Vec<MultiPoly<C>>>,
) -> Certificate<C> {
    let one = C::one();
    let mut coeffs: Vec<&C> = vec![&one];
    for row in &p {
        for e in row {
            coeffs.extend(e.terms().map(|(_, c)| c));
        }
    }
    let u = C::normalizer(&coeffs, &one);
    let p = p
        .iter()
        .map(|row| row.iter().map(|e| e.scale(&u)).collect())
        .collect();
    Certificate { vars, s, r: u, p }
}

pub fn verify_certificate<C: Field>(q: &[MultiPoly<C>], cert: &Certificate<C>) -> Verification {
    let nv = cert.vars.len();
    if cert.p.len() != nv || cert.p.iter().any(|row| row.len() != q.len()) {
        return Verification::fail("dimension mismatch between forms and certificate");
    }
    if q.iter().any(|f| f.vars() != cert.vars.as_slice())
        || cert.p.iter().flatten().any(|e| e.vars() != cert.vars.as_slice())
    {
        return Verification::fail("variable lists differ");
    }
    if cert.r.is_zero() {
        return Verification::fail("R is zero");
    }
    for (j, row) in cert.p.iter().enumerate() {
        for (i, e) in row.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let want = cert.s as i64 - q[i].total_degree() as i64;
            if !e.is_homogeneous() || e.total_degree() as i64 != want {
                return Verification::fail(format!(
                    "P {j} {i} has degree {} but s - deg Q_{i} = {want}",
                    e.total_degree()
                ));
            }
        }
    }
    for (j, row) in cert.p.iter().enumerate() {
        let mut exp = vec![0u32; nv];
        exp[j] = cert.s;
        let lhs = MultiPoly::monomial(cert.vars.clone(), exp, cert.r.clone());
        let mut rhs = MultiPoly::zero(cert.vars.clone());
        for (e, f) in row.iter().zip(q) {
            rhs = &rhs + &(e * f);
        }
        if lhs != rhs {
            return Verification::fail(format!("identity for j = {j} fails"));
        }
    }
    Verification::pass()
}

impl<C: Field> Certificate<C> {
    /// Specializes `t = z`; `None` at a pole of some coefficient.
    pub fn eval_param(&self, z: &Rational) -> Option<Certificate<Rational>> {
        Some(Certificate {
            vars: self.vars.clone(),
            s: self.s,
            r: self.r.eval_param(z)?,
            p: self
                .p
                .iter()
                .map(|row| row.iter().map(|e| e.eval_param(z)).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()?,
        })
    }

    pub fn to_ratfunc(&self) -> Certificate<RatFunc> {
        Certificate {
            vars: self.vars.clone(),
            s: self.s,
            r: self.r.to_ratfunc(),
            p: self
                .p
                .iter()
                .map(|row| row.iter().map(|e| e.to_ratfunc_poly()).collect())
                .collect(),
        }
    }

    /// Text form: a `vars:` line, `s = ..`, `R = ..`, then `P j i = ..` for
    /// every entry (`j` indexes `x_j`, `i` the forms from 0).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vars: {}", self.vars.join(" ")).unwrap();
        writeln!(out, "s = {}", self.s).unwrap();
        writeln!(out, "R = {}", self.r).unwrap();
        for (j, row) in self.p.iter().enumerate() {
            for (i, e) in row.iter().enumerate() {
                writeln!(out, "P {j} {i} = {e}").unwrap();
            }
        }
        out
    }
}

impl Certificate<RatFunc> {
    pub fn from_text(text: &str) -> Result<Self> {
        let mut vars: Option<Vec<String>> = None;
        let mut s: Option<u32> = None;
        let mut r: Option<RatFunc> = None;
        let mut entries: Vec<(usize, usize, KPoly)> = Vec::new();
        let perr = |line: usize, message: String| Error::Parse {
            line,
            column: 1,
            message,
        };
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let l = raw.split('#').next().unwrap_or("").trim();
            if l.is_empty() {
                continue;
            }
            if let Some(rest) = l.strip_prefix("vars:") {
                vars = Some(rest.split_whitespace().map(str::to_string).collect());
                continue;
            }
            let Some((key, value)) = l.split_once('=') else {
                return Err(perr(line, format!("expected 'key = value', found '{l}'")));
            };
            let key: Vec<&str> = key.split_whitespace().collect();
            let value = value.trim();
            let col = raw.find('=').map(|c| c + 2).unwrap_or(1);
            let shift = |e: Error| match e {
                Error::Parse { column, message, .. } => Error::Parse {
                    line,
                    column: column + col - 1,
                    message,
                },
                other => other,
            };
            match key.as_slice() {
                ["s"] => {
                    s = Some(value.parse().map_err(|_| perr(line, format!("bad s '{value}'")))?)
                }
                ["R"] => {
                    let p = parse_poly_line(value, line, Some(&[])).map_err(shift)?;
                    r = Some(p.as_constant().unwrap_or_else(RatFunc::zero));
                }
                ["P", j, i] => {
                    let j: usize = j.parse().map_err(|_| perr(line, format!("bad index '{j}'")))?;
                    let i: usize = i.parse().map_err(|_| perr(line, format!("bad index '{i}'")))?;
                    let v = vars
                        .as_ref()
                        .ok_or_else(|| perr(line, "P entry before the vars line".into()))?;
                    let p = parse_poly_line(value, line, Some(v)).map_err(shift)?;
                    entries.push((j, i, p));
                }
                _ => return Err(perr(line, format!("unknown key '{}'", key.join(" ")))),
            }
        }
        let vars = vars.ok_or_else(|| perr(1, "missing vars line".into()))?;
        let s = s.ok_or_else(|| perr(1, "missing s".into()))?;
        let r = r.ok_or_else(|| perr(1, "missing R".into()))?;
        let rows = entries.iter().map(|e| e.0 + 1).max().unwrap_or(0);
        let cols = entries.iter().map(|e| e.1 + 1).max().unwrap_or(0);
        let mut p = vec![vec![KPoly::zero(vars.clone()); cols]; rows];
        for (j, i, e) in entries {
            p[j][i] = e;
        }
        Ok(Certificate { vars, s, r, p })
    }
}

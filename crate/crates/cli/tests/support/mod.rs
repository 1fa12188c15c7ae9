//! Random inputs and independent oracles shared by the CLI tests.
#![allow(dead_code)]

use defect_forge_core::algebra::factor::factorize;
use defect_forge_core::algebra::mpoly::{monomials_of_degree, KPoly, QPoly};
use defect_forge_core::algebra::ratfunc::RatFunc;
use defect_forge_core::algebra::rational::{int, rat, Rational};
use defect_forge_core::algebra::upoly::UniPoly;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn small_rational(r: &mut ChaCha8Rng, h: i64) -> Rational {
    rat(r.gen_range(-h..=h), r.gen_range(1..=3))
}

pub fn upoly(r: &mut ChaCha8Rng, deg: usize, h: i64) -> UniPoly {
    UniPoly::new((0..=deg).map(|_| int(r.gen_range(-h..=h))).collect())
}

pub fn qpoly(r: &mut ChaCha8Rng, vars: &[String], deg: u32, terms: usize) -> QPoly {
    let mut p = QPoly::zero(vars.to_vec());
    for _ in 0..terms {
        let d = r.gen_range(0..=deg);
        let monos = monomials_of_degree(vars.len(), d);
        let m = monos[r.gen_range(0..monos.len())].clone();
        p.add_term(m, int(r.gen_range(-5..=5)));
    }
    p
}

/// Form of degree `deg` whose pure powers all appear.
pub fn dense_form(r: &mut ChaCha8Rng, vars: &[String], deg: u32) -> QPoly {
    let mut p = QPoly::zero(vars.to_vec());
    for m in monomials_of_degree(vars.len(), deg) {
        let pure = m.iter().filter(|&&e| e > 0).count() == 1;
        let c = if pure {
            let v = r.gen_range(1..=4);
            if r.gen_bool(0.5) { v } else { -v }
        } else if r.gen_bool(0.5) {
            r.gen_range(-3..=3)
        } else {
            0
        };
        p.add_term(m, int(c));
    }
    p
}

pub fn kpoly(r: &mut ChaCha8Rng, vars: &[String], deg: u32, terms: usize) -> KPoly {
    let mut p = KPoly::zero(vars.to_vec());
    for _ in 0..terms {
        let d = r.gen_range(0..=deg);
        let monos = monomials_of_degree(vars.len(), d);
        let m = monos[r.gen_range(0..monos.len())].clone();
        let k = r.gen_range(0..=1);
        p.add_term(m, RatFunc::from_poly(upoly(r, k, 3)));
    }
    p
}

/// Squarefree and free of monomial factors, decided by factoring.
pub fn factor_good(g: &QPoly) -> bool {
    if g.is_zero() {
        return false;
    }
    if g.is_constant() {
        return true;
    }
    factorize(g)
        .unwrap()
        .factors
        .iter()
        .all(|(h, m)| *m == 1 && !(h.num_terms() == 1 && h.total_degree() == 1))
}

fn fact(k: u64) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

fn choose(a: i64, k: u64) -> BigInt {
    if a < k as i64 {
        BigInt::from(0)
    } else {
        fact(a as u64) / (fact(k) * fact(a as u64 - k))
    }
}

/// `(c, M)` for the gcd inequalities, from factorials.
pub fn c_and_big_m(n: u64, d: u64, m: u64) -> (BigInt, BigInt) {
    let (mi, ni, di) = (m as i64, n as i64, d as i64);
    let c = 2 * choose(mi + ni - di, n + 1) - choose(mi + ni - 2 * di, n + 1);
    let big_m = 2 * choose(mi + ni - di, n) - choose(mi + ni - 2 * di, n);
    (c, big_m)
}

pub fn inequalities_hold(n: u64, d: u64, eps: &Rational, kappa: &Rational, m: u64) -> bool {
    let (c, big_m) = c_and_big_m(n, d, m);
    let mp = (kappa * Rational::from_integer(BigInt::from(m).pow(n as u32 - 2))).ceil().to_integer();
    let q = Rational::from_integer;
    let lhs1 = q(&mp * BigInt::from(m * n)) / q(big_m.clone());
    let lhs2 = (Rational::new(BigInt::from(m) * choose(m as i64 + n as i64, n), BigInt::from(n + 1))
        - q(c)
        - q(&mp * BigInt::from(m)))
        / q(big_m);
    lhs1 <= eps / rat(4, 1) && lhs2 <= eps / Rational::from_integer(BigInt::from(4 * (n + 1)))
}

fn cf(c: &RatFunc) -> f64 {
    c.as_constant().expect("constant coefficient").to_f64().unwrap()
}

/// Durand–Kerner roots of a polynomial given lowest degree first.
pub fn dk_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lc).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c);
    let mut roots: Vec<Complex64> = (0..n).map(|k| Complex64::new(0.4, 0.9).powu(k as u32)).collect();
    for _ in 0..2000 {
        let prev = roots.clone();
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    den *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / den;
            roots[i] -= step;
        }
        if roots.iter().zip(&prev).all(|(a, b)| (a - b).norm() < 1e-15) {
            break;
        }
    }
    roots
}

fn det(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut d = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n).max_by(|&a, &b| m[a][c].norm().total_cmp(&m[b][c].norm())).unwrap();
        if m[p][c].norm() == 0.0 {
            return Complex64::zero();
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                let v = m[c][k];
                m[r][k] -= f * v;
            }
        }
    }
    d
}

/// Whether `B(λ, T)` vanishes identically, at `T = 0`, or has a repeated
/// root, for complex `λ`. Sylvester determinant against Hadamard's bound.
pub fn degenerate_at(b: &KPoly, lambda: Complex64) -> bool {
    let deg_t = b.degree_in(1) as usize;
    let mut c = vec![Complex64::zero(); deg_t + 1];
    for (e, v) in b.terms() {
        c[e[1] as usize] += lambda.powu(e[0]) * cf(v);
    }
    let scale: f64 = b.terms().map(|(e, v)| cf(v).abs() * lambda.norm().max(1.0).powi(e[0] as i32)).sum();
    let tol = 1e-9 * scale;
    while c.last().is_some_and(|x| x.norm() < tol) {
        c.pop();
    }
    if c.is_empty() || c[0].norm() < tol {
        return true;
    }
    let n = c.len() - 1;
    if n < 2 {
        return false;
    }
    let d: Vec<Complex64> = (1..=n).map(|k| c[k] * k as f64).collect();
    let size = 2 * n - 1;
    let mut m = vec![vec![Complex64::zero(); size]; size];
    for i in 0..n - 1 {
        for k in 0..=n {
            m[i][i + k] = c[n - k];
        }
    }
    for i in 0..n {
        for k in 0..n {
            m[n - 1 + i][i + k] = d[n - 1 - k];
        }
    }
    let hadamard: f64 = m.iter().map(|row| row.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()).product();
    det(m).norm() < 1e-8 * hadamard
}

/// Complex roots of a polynomial in `L` with rational coefficients.
pub fn roots_in_l(h: &KPoly) -> Vec<Complex64> {
    let coeffs: Vec<Complex64> = (0..=h.degree_in(0))
        .map(|k| Complex64::new(cf(&h.coeff(&[k])), 0.0))
        .collect();
    dk_roots(&coeffs)
}

/// Exact test of `B(λ, T)` for rational `λ` by factoring.
pub fn b_good_exact(b: &KPoly, lambda: &Rational) -> bool {
    let s: QPoly = b
        .subst_value(0, &RatFunc::constant(lambda.clone()))
        .to_rational()
        .unwrap();
    factor_good(&s)
}

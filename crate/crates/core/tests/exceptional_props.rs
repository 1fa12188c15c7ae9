mod common;

use common::*;
use defect_forge_core::algebra::factor::factorize;
use defect_forge_core::algebra::mpoly::{KPoly, QPoly};
use defect_forge_core::algebra::ratfunc::RatFunc;
use defect_forge_core::algebra::rational::{rat, Rational};
use defect_forge_core::exceptional::{b_specialization_ok, build_z_n2, gcd_params, subsum_forms, RootFactor};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use rand::Rng;

const RELATIONS: [(i64, i64); 7] = [(1, 1), (1, -1), (2, 1), (1, 2), (1, 0), (0, 1), (3, -2)];

fn cf(c: &RatFunc) -> f64 {
    c.as_constant().expect("constant coefficient").to_f64().unwrap()
}

fn dk_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    // Durand–Kerner on the monic polynomial.
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

/// Determinant by partial pivoting.
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

/// Numeric oracle: does `B(λ, T)` vanish at `T = 0`, vanish identically or
/// have a repeated root, for a complex `λ`?
fn degenerate_at(b: &KPoly, lambda: Complex64) -> bool {
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
    // Sylvester matrix of p (deg n) and p' (deg n-1), size 2n-1.
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

fn roots_of(r: &RootFactor) -> Vec<Complex64> {
    let h = &r.factor;
    let coeffs: Vec<Complex64> = (0..=h.degree_in(0))
        .map(|k| Complex64::new(cf(&h.coeff(&[k])), 0.0))
        .collect();
    dk_roots(&coeffs)
}

/// Exact oracle for rational `λ`: factor `B(λ, T)`.
fn exact_good(b: &KPoly, lambda: &Rational) -> bool {
    let s: QPoly = b
        .subst_value(0, &RatFunc::constant(lambda.clone()))
        .to_rational()
        .unwrap();
    if s.is_zero() {
        return false;
    }
    if s.is_constant() {
        return true;
    }
    factorize(&s)
        .unwrap()
        .factors
        .iter()
        .all(|(h, m)| *m == 1 && !(h.num_terms() == 1 && h.total_degree() == 1))
}

fn corpus() -> Vec<KPoly> {
    let vars = names("x", 3);
    let mut r = rng(41);
    let mut out = Vec::new();
    while out.len() < 12 {
        let d = r.gen_range(2..=3);
        let g = dense_form(&mut r, &vars, d).to_kpoly();
        if build_z_n2(&g, 1, 1).is_ok() {
            out.push(g);
        }
    }
    out
}

#[test]
fn plane_lists_are_sound_on_corpus() {
    let mut r = rng(42);
    let mut emitted = 0;
    let mut sampled = 0;
    for g in corpus() {
        for (n1, n2) in RELATIONS {
            let desc = build_z_n2(&g, n1, n2).unwrap();
            let data = desc.n2.as_ref().unwrap();
            for rf in data.gamma.iter().chain(&data.alpha) {
                emitted += 1;
                match &rf.value {
                    Some(v) => {
                        let lam = v.as_constant().unwrap();
                        assert!(!exact_good(&data.b, &lam), "{g} ({n1},{n2}) lambda = {lam}");
                        assert!(!b_specialization_ok(&data.b, v));
                    }
                    None => {
                        for z in roots_of(rf) {
                            assert!(degenerate_at(&data.b, z), "{g} ({n1},{n2}) root {z} of {}", rf.factor);
                        }
                    }
                }
            }
            let mut taken = 0;
            while taken < 20 {
                let lam = small_rational(&mut r, 40);
                let lf = RatFunc::constant(lam.clone());
                let hit = lam.is_zero()
                    || data
                        .all_roots()
                        .any(|rf| rf.factor.eval(&[lf.clone()]).is_zero());
                if hit {
                    continue;
                }
                taken += 1;
                sampled += 1;
                assert!(exact_good(&data.b, &lam), "{g} ({n1},{n2}) lambda = {lam} not emitted");
                assert!(b_specialization_ok(&data.b, &lf));
            }
        }
    }
    assert!(emitted > 0);
    assert_eq!(sampled, 12 * RELATIONS.len() * 20);
}

#[test]
fn numeric_oracle_agrees_on_known_cases() {
    let vars = vec!["L".to_string(), "T".to_string()];
    let b = defect_forge_core::algebra::parse::parse_poly_in("L + T^2", &vars).unwrap();
    assert!(degenerate_at(&b, Complex64::zero()));
    assert!(!degenerate_at(&b, Complex64::new(1.0, 0.0)));
    let b = defect_forge_core::algebra::parse::parse_poly_in("T^2 - 2*T + L", &vars).unwrap();
    assert!(degenerate_at(&b, Complex64::new(1.0, 0.0)));
    assert!(!degenerate_at(&b, Complex64::new(2.0, 0.0)));
}

/// Independent evaluation of both inequalities with factorial binomials.
fn inequalities_hold(n: u64, d: u64, eps: &Rational, kappa: &Rational, m: u64) -> bool {
    use num_bigint::BigInt;
    let fact = |k: u64| (1..=k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i));
    let choose = |a: i64, k: u64| {
        if a < k as i64 {
            BigInt::from(0)
        } else {
            fact(a as u64) / (fact(k) * fact(a as u64 - k))
        }
    };
    let (mi, ni, di) = (m as i64, n as i64, d as i64);
    let c: BigInt = 2 * choose(mi + ni - di, n + 1) - choose(mi + ni - 2 * di, n + 1);
    let big_m: BigInt = 2 * choose(mi + ni - di, n) - choose(mi + ni - 2 * di, n);
    let mp = (kappa * Rational::from_integer(BigInt::from(m).pow(n as u32 - 2))).ceil().to_integer();
    let q = |x: BigInt| Rational::from_integer(x);
    let lhs1 = q(&mp * BigInt::from(m * n)) / q(big_m.clone());
    let lhs2 = (Rational::new(BigInt::from(m) * choose(mi + ni, n), BigInt::from(n + 1))
        - q(c)
        - q(&mp * BigInt::from(m)))
        / q(big_m);
    lhs1 <= eps / rat(4, 1) && lhs2 <= eps / Rational::from_integer(BigInt::from(4 * (n + 1)))
}

#[test]
fn gcd_params_minimal_for_small_triples() {
    for (n, d, e) in [(2u32, 1u32, rat(1, 2)), (2, 2, rat(1, 10)), (3, 1, rat(1, 3))] {
        let p = gcd_params(n, d, &e, &rat(1, 1), None).unwrap();
        assert!(p.holds() && p.exhaustive);
        assert!(inequalities_hold(n as u64, d as u64, &e, &rat(1, 1), p.m));
        for m in 2 * d as u64..p.m {
            assert!(!inequalities_hold(n as u64, d as u64, &e, &rat(1, 1), m), "m = {m}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn homogenize_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let vars = names("x", 3);
        let p = kpoly(&mut r, &vars[1..], 3, 4);
        prop_assume!(!p.is_zero());
        let h = p.homogenize("x0", 0);
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.dehomogenize(0).with_vars(&vars[1..]).unwrap(), p);
    }

    #[test]
    fn subsums_are_stable_under_permutation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let vars = names("x", 3);
        let f = dense_form(&mut r, &vars, 1).to_kpoly();
        let perm = [2usize, 0, 1];
        let images: Vec<KPoly> = perm.iter().map(|&i| KPoly::var(vars.clone(), i)).collect();
        let g = f.substitute(&images);
        let mut a: Vec<String> = subsum_forms(&f).unwrap().iter().map(|(p, _)| p.substitute(&images).normalize().to_string()).collect();
        let mut b: Vec<String> = subsum_forms(&g).unwrap().iter().map(|(p, _)| p.normalize().to_string()).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        let k = f.num_terms();
        prop_assert_eq!(subsum_forms(&f).unwrap().len(), (1usize << k) - 1);
    }
}

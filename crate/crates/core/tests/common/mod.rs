#![allow(dead_code)]

use defect_forge_core::algebra::mpoly::{monomials_of_degree, KPoly, QPoly};
use defect_forge_core::algebra::ratfunc::RatFunc;
use defect_forge_core::algebra::rational::{int, rat, Rational};
use defect_forge_core::algebra::upoly::UniPoly;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

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

pub fn ratfunc(r: &mut ChaCha8Rng) -> RatFunc {
    let den = loop {
        let k = r.gen_range(0..=2);
        let d = upoly(r, k, 3);
        if !d.is_zero() {
            break d;
        }
    };
    let k = r.gen_range(0..=3);
    RatFunc::new(upoly(r, k, 4), den)
}

pub fn nonzero_ratfunc(r: &mut ChaCha8Rng) -> RatFunc {
    loop {
        let f = ratfunc(r);
        if !num_traits::Zero::is_zero(&f) {
            return f;
        }
    }
}

/// Random polynomial with at most `terms` terms of total degree `≤ deg`.
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

/// Random form of degree `deg` with every pure power present.
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

/// Random polynomial over ℚ(t) with small polynomial coefficients.
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

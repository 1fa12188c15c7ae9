mod common;

use common::*;
use defect_forge_core::algebra::factor::factorize;
use defect_forge_core::algebra::mpoly::QPoly;
use defect_forge_core::algebra::rational::Rational;
use defect_forge_core::specialization::{compute_sigma, specialization_ok};
use rand::Rng;

fn specialize(f: &QPoly, params: &[usize], lambda: &[Rational]) -> QPoly {
    let mut g = f.clone();
    for (&i, v) in params.iter().zip(lambda) {
        g = g.subst_value(i, v);
    }
    g
}

/// Factorization-based oracle: no factor is a bare variable and none repeats.
fn good(g: &QPoly) -> bool {
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

#[test]
fn hundred_polynomials_twenty_points() {
    let mut r = rng(21);
    let mut polys = 0;
    let mut trials = 0;
    while polys < 100 {
        let two = r.gen_bool(0.3);
        let vars: Vec<String> = if two {
            ["x0", "x1", "y0", "y1"].iter().map(|s| s.to_string()).collect()
        } else {
            ["x0", "x1", "y0"].iter().map(|s| s.to_string()).collect()
        };
        let params: Vec<usize> = if two { vec![2, 3] } else { vec![2] };
        let f = qpoly(&mut r, &vars, 3, 4);
        if f.is_constant() || !good(&f) || (0..2).all(|i| f.degree_in(i) == 0) {
            continue;
        }
        let Ok(sigma) = compute_sigma(&f, &params) else {
            continue;
        };
        polys += 1;
        let mut admitted = 0;
        let mut guard = 0;
        while admitted < 20 && guard < 400 {
            guard += 1;
            let lambda: Vec<Rational> = params.iter().map(|_| small_rational(&mut r, 6)).collect();
            if !sigma.admits(&lambda) {
                continue;
            }
            admitted += 1;
            trials += 1;
            let g = specialize(&f, &params, &lambda);
            assert!(good(&g), "f = {f}, lambda = {lambda:?}, g = {g}");
            assert!(specialization_ok(&f, &params, &lambda));
        }
        assert_eq!(admitted, 20, "too few admissible points for {f}");
    }
    assert_eq!(trials, 2000);
}

#[test]
fn excluded_points_are_in_sigma_zero_set() {
    // Every bad specialization found by search is caught by Σ.
    let mut r = rng(22);
    let vars: Vec<String> = ["x0", "x1", "y0"].iter().map(|s| s.to_string()).collect();
    let mut caught = 0;
    for _ in 0..200 {
        let f = qpoly(&mut r, &vars, 2, 4);
        if f.is_constant() || !good(&f) || (0..2).all(|i| f.degree_in(i) == 0) {
            continue;
        }
        let Ok(sigma) = compute_sigma(&f, &[2]) else { continue };
        for v in -4..=4 {
            let lambda = [defect_forge_core::algebra::rational::int(v)];
            if !good(&specialize(&f, &[2], &lambda)) {
                assert!(!sigma.admits(&lambda), "f = {f}, y0 = {v}");
                caught += 1;
            }
        }
    }
    assert!(caught > 0);
}

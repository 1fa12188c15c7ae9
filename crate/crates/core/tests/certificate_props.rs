mod common;

use std::time::Instant;

use common::*;
use defect_forge_core::algebra::mpoly::KPoly;
use defect_forge_core::algebra::ratfunc::RatFunc;
use defect_forge_core::nullstellensatz::{
    check_weak_general_position, fails_at, find_certificate, only_trivial_zero, verify_certificate,
    Certificate,
};
use defect_forge_core::Error;
use num_traits::One;
use rand::Rng;

fn random_system(r: &mut rand_chacha::ChaCha8Rng) -> Vec<defect_forge_core::algebra::mpoly::QPoly> {
    let n = r.gen_range(1..=3);
    let vars = names("x", n + 1);
    loop {
        let q: Vec<_> = (0..=n)
            .map(|_| {
                let d = r.gen_range(1..=3);
                dense_form(r, &vars, d)
            })
            .collect();
        let refs: Vec<_> = q.iter().collect();
        if only_trivial_zero(&refs) {
            return q;
        }
    }
}

#[test]
fn random_systems_certify_minimally() {
    let mut r = rng(11);
    for case in 0..12 {
        let q = random_system(&mut r);
        let start = Instant::now();
        let cert = find_certificate(&q).unwrap();
        assert!(start.elapsed().as_secs() < 60, "case {case}");
        let v = verify_certificate(&q, &cert);
        assert!(v.ok, "case {case}: {:?}", v.reason);
        assert!(fails_at(&q, cert.s - 1).is_some(), "case {case}: s not minimal");
        // The text form survives a round trip.
        let back = Certificate::from_text(&cert.to_ratfunc().to_text()).unwrap();
        assert_eq!(back, cert.to_ratfunc());
    }
}

#[test]
fn parametric_certificate_specializes() {
    let vars = names("x", 2);
    let t = RatFunc::t();
    let one = RatFunc::one();
    // x0^2 + t x1^2, x0 x1 + (t+1) x1^2
    let q0 = KPoly::from_terms(vars.clone(), [(vec![2, 0], one.clone()), (vec![0, 2], t.clone())]);
    let q1 = KPoly::from_terms(
        vars.clone(),
        [(vec![1, 1], one.clone()), (vec![0, 2], &t + &one)],
    );
    let q = vec![q0, q1];
    check_weak_general_position(&q).unwrap();
    let cert = find_certificate(&q).unwrap();
    assert!(verify_certificate(&q, &cert).ok);
    for z in [-3i64, 2, 5, 7] {
        let zr = defect_forge_core::algebra::rational::int(z);
        let (Some(c), Some(q0), Some(q1)) = (cert.eval_param(&zr), q[0].eval_t(&zr), q[1].eval_t(&zr))
        else {
            continue;
        };
        if c.r == defect_forge_core::algebra::rational::int(0) {
            continue;
        }
        assert!(verify_certificate(&[q0, q1], &c).ok, "z = {z}");
    }
}

#[test]
fn shared_zero_is_rejected() {
    let vars = names("x", 3);
    let mut r = rng(3);
    for _ in 0..10 {
        // Three forms through [1:1:1].
        let q: Vec<_> = (0..3)
            .map(|_| {
                let d = r.gen_range(1..=2);
                let f = dense_form(&mut r, &vars, d);
                let at = f.eval(&vec![defect_forge_core::algebra::rational::int(1); 3]);
                let deg = f.total_degree();
                let mut g = f.clone();
                g.add_term(vec![deg, 0, 0], -at);
                g
            })
            .collect();
        match find_certificate(&q) {
            Err(Error::NotInPosition(_)) | Err(Error::InvalidInput(_)) => {}
            other => panic!("{other:?}"),
        }
    }
}

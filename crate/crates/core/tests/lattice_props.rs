mod common;

use common::*;
use defect_forge_core::lattice::{bezout_pair, det_i64, extend_to_basis, UnimodularEnumerator};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use rand::Rng;

fn bound_of(m: &[i64]) -> Vec<i64> {
    m.iter().map(|x| x.abs().max(1)).collect()
}

fn content(m: &[i64]) -> i64 {
    m.iter().fold(0i64, |acc, &x| acc.gcd(&x))
}

fn check_basis(m: &[i64]) {
    let a = extend_to_basis(m).unwrap();
    let rows = a.rows();
    assert_eq!(rows[0], m);
    let det = det_i64(rows);
    assert!(det == BigInt::from(1) || det == BigInt::from(-1), "{m:?} det {det}");
    let b = bound_of(m);
    for row in rows {
        for (v, bj) in row.iter().zip(&b) {
            assert!(v.abs() <= *bj, "{m:?} row {row:?}");
        }
    }
}

/// Exhaustive search for rows completing `m` inside the box.
fn oracle_feasible(m: &[i64]) -> bool {
    let n = m.len();
    let b = bound_of(m);
    let boxed: Vec<Vec<i64>> = {
        let mut out = vec![vec![]];
        for &bj in &b {
            out = out
                .into_iter()
                .flat_map(|p| (-bj..=bj).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                }))
                .collect();
        }
        out
    };
    match n {
        1 => m[0].abs() == 1,
        2 => boxed.iter().any(|r| (m[0] * r[1] - m[1] * r[0]).abs() == 1),
        3 => boxed.iter().any(|r2| {
            let c = [
                m[1] * r2[2] - m[2] * r2[1],
                m[2] * r2[0] - m[0] * r2[2],
                m[0] * r2[1] - m[1] * r2[0],
            ];
            if content(&c) != 1 {
                return false;
            }
            boxed
                .iter()
                .any(|r3| (c[0] * r3[0] + c[1] * r3[1] + c[2] * r3[2]).abs() == 1)
        }),
        _ => unreachable!(),
    }
}

#[test]
fn thousand_random_primitive_vectors() {
    let mut r = rng(4);
    let mut done = 0;
    while done < 1000 {
        let n = r.gen_range(1..=5);
        let m: Vec<i64> = (0..n).map(|_| r.gen_range(-50..=50)).collect();
        if content(&m) != 1 {
            continue;
        }
        check_basis(&m);
        done += 1;
    }
}

#[test]
fn agrees_with_brute_force_oracle() {
    let mut r = rng(5);
    for _ in 0..60 {
        let n = r.gen_range(1..=3);
        let m: Vec<i64> = (0..n).map(|_| r.gen_range(-6..=6)).collect();
        let ours = extend_to_basis(&m).is_ok();
        assert_eq!(ours, oracle_feasible(&m), "{m:?}");
    }
    for m in [vec![2, 4], vec![0, 0, 3], vec![6, -4, 2], vec![0, 1, 0]] {
        assert_eq!(extend_to_basis(&m).is_ok(), oracle_feasible(&m), "{m:?}");
    }
}

#[test]
fn enumerator_yields_distinct_unimodular_matrices() {
    let all: Vec<_> = UnimodularEnumerator::new(2, 2).collect();
    let mut seen = std::collections::BTreeSet::new();
    for a in &all {
        assert_eq!(det_i64(a.rows()).magnitude(), &num_bigint::BigUint::from(1u32));
        assert!(a.norm_inf() <= 2);
        assert!(seen.insert(a.rows().to_vec()));
    }
    // Oracle: brute force over entries in [-2, 2].
    let mut count = 0;
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                for d in -2i64..=2 {
                    let norm = (a.abs() + b.abs()).max(c.abs() + d.abs());
                    if norm <= 2 && (a * d - b * c).abs() == 1 {
                        count += 1;
                    }
                }
            }
        }
    }
    assert_eq!(all.len(), count);
}

proptest! {
    #[test]
    fn bezout_identity(n1 in -500i64..500, n2 in -500i64..500) {
        prop_assume!(n1.gcd(&n2) == 1);
        let (a, b) = bezout_pair(n1, n2).unwrap();
        prop_assert_eq!(a * n1 + b * n2, 1);
    }

    #[test]
    fn inverse_and_product(v in proptest::collection::vec(-9i64..=9, 2..=4)) {
        prop_assume!(content(&v) == 1);
        let a = extend_to_basis(&v).unwrap();
        let n = v.len();
        let prod: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a.rows()[i][k] * a.inverse()[k][j]).sum()).collect())
            .collect();
        for (i, row) in prod.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                prop_assert_eq!(x, (i == j) as i64);
            }
        }
        let sq = a.mul(&a).unwrap();
        prop_assert_eq!(det_i64(sq.rows()), BigInt::from(1));
    }
}

use std::time::Instant;

use defect_forge_core::algebra::mpoly::KPoly;
use defect_forge_core::algebra::parse::parse_poly_in;
use defect_forge_nevanlinna::functionals::{characteristic, counting};
use defect_forge_nevanlinna::{defect_report, CurveSpec, ReportOptions};
use num_complex::Complex64;

fn vars(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn divisor(src: &str, n: usize) -> KPoly {
    parse_poly_in(src, &vars(n)).unwrap()
}

/// Closed-form zeros of e^{z^2} - e^{2z}: z = 1 ± sqrt(1 + 2πik).
fn oracle_zeros(r: f64) -> Vec<Complex64> {
    let tau = 2.0 * std::f64::consts::PI;
    let kmax = ((r + 2.0) * (r + 2.0) / tau).ceil() as i64;
    let mut out = Vec::new();
    for k in -kmax..=kmax {
        let s = Complex64::new(1.0, tau * k as f64).sqrt();
        for z in [Complex64::new(1.0, 0.0) + s, Complex64::new(1.0, 0.0) - s] {
            if z.norm() <= r {
                out.push(z);
            }
        }
    }
    out
}

#[test]
fn quadric_defect_at_forty() {
    let start = Instant::now();
    let curve = CurveSpec::parse("1\nexp(z)\nexp(z^2)\n").unwrap();
    let divs = [divisor("x0", 3), divisor("x1", 3), divisor("x0*x2 - x1^2", 3)];
    let opts = ReportOptions { rmin: 5.0, rmax: 40.0, grid: 8, seed: 7, exclude: 0.0 };
    let table = defect_report(&curve, &divs, &opts).unwrap();
    assert!(table.monotone);
    let last = table.rows.last().unwrap();
    assert_eq!(last.r, 40.0);
    let d: Vec<f64> = last.divisors.iter().map(|x| x.delta).collect();
    assert_eq!(d[0], 1.0);
    assert_eq!(d[1], 1.0);
    assert!((0.35..=0.65).contains(&d[2]), "{d:?}");
    assert!(d.iter().sum::<f64>() <= 2.9);

    // The counted zeros agree with the closed form.
    let want = oracle_zeros(40.0);
    assert_eq!(table.summary[2].zeros, want.len());
    let n_oracle: f64 = want.iter().map(|z| if z.norm() < 1e-12 { 40f64.ln() } else { (40.0 / z.norm()).ln() }).sum();
    assert!((last.divisors[2].n - n_oracle).abs() < 1e-6 * n_oracle, "{} vs {n_oracle}", last.divisors[2].n);
    let t = characteristic(&curve, 40.0).unwrap();
    assert!((t - last.t).abs() < 1e-9);
    assert!(1.0 - n_oracle / (2.0 * t) > 0.35);
    assert!(start.elapsed().as_secs() < 600);
}

#[test]
fn counting_matches_hand_value() {
    let curve = CurveSpec::parse("1\nexp(z)").unwrap();
    let d = divisor("x1 - x0", 2);
    let table = defect_report(&curve, &[d], &ReportOptions { rmin: 10.0, rmax: 10.0, grid: 1, ..Default::default() }).unwrap();
    let tau = 2.0 * std::f64::consts::PI;
    let want = 10f64.ln() + 2.0 * (10.0 / tau).ln();
    assert!((table.rows[0].divisors[0].n - want).abs() < 1e-9);
    let _ = counting;
}

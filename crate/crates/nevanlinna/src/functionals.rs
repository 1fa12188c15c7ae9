//! Characteristic, counting, proximity and gcd counting functions.
//!
//! `T_f(r) = (1/2π)∫ log max_i |f_i(re^{iθ})| dθ − log max_i |f_i(0)|`.

use std::f64::consts::PI;

use defect_forge_core::algebra::mpoly::KPoly;
use num_complex::Complex64;

use crate::curve::{log_norm, CurveSpec, LogComponent};
use crate::entire::{horner, to_f64_coeffs, EntireFn};
use crate::error::Result;
use crate::quad::{breakpoints, integrate, QuadOptions};
use crate::zeros::Zero;

/// Zeros closer than this to the origin count as being at the origin.
pub const ORIGIN_TOL: f64 = 1e-9;

fn base_pieces(r: f64) -> usize {
    (64.0 + 4.0 * r).min(4096.0) as usize
}

fn circle_integral(f: impl Fn(Complex64) -> f64, r: f64, extra: &[f64], opts: &QuadOptions) -> Result<f64> {
    let br = breakpoints(0.0, 2.0 * PI, base_pieces(r), extra);
    let (v, _) = integrate(|th| f(Complex64::from_polar(r, th)), &br, opts)?;
    Ok(v / (2.0 * PI))
}

pub fn characteristic(curve: &CurveSpec, r: f64) -> Result<f64> {
    characteristic_of(&curve.log_components(), r)
}

pub fn characteristic_of(comps: &[LogComponent], r: f64) -> Result<f64> {
    if r <= 0.0 {
        return Ok(0.0);
    }
    let base = log_norm(comps, Complex64::new(0.0, 0.0));
    let mean = circle_integral(|z| log_norm(comps, z), r, &[], &QuadOptions::default())?;
    Ok(mean - base)
}

/// `N^{(k)}(r)`; `trunc = None` gives `N`.
pub fn counting(zeros: &[Zero], r: f64, trunc: Option<u32>) -> f64 {
    let mut total = 0.0;
    for z in zeros {
        let m = trunc.map_or(z.multiplicity, |k| z.multiplicity.min(k)) as f64;
        let a = z.z.norm();
        if a < ORIGIN_TOL {
            total += m * r.ln();
        } else if a < r {
            total += m * (r / a).ln();
        }
    }
    total
}

/// Common zeros of two lists with the smaller multiplicity.
pub fn common_zeros(a: &[Zero], b: &[Zero]) -> Vec<Zero> {
    let mut out = Vec::new();
    for x in a {
        let best = b
            .iter()
            .map(|y| ((x.z - y.z).norm(), y))
            .filter(|(d, y)| *d <= 1e-9_f64.max(x.uncertainty + y.uncertainty))
            .min_by(|p, q| p.0.total_cmp(&q.0));
        if let Some((_, y)) = best {
            out.push(Zero {
                z: x.z,
                multiplicity: x.multiplicity.min(y.multiplicity),
                uncertainty: x.uncertainty.max(y.uncertainty),
            });
        }
    }
    out
}

pub fn gcd_counting(a: &[Zero], b: &[Zero], r: f64) -> f64 {
    counting(&common_zeros(a, b), r, None)
}

/// A divisor prepared for numerical work on one curve.
#[derive(Clone, Debug)]
pub struct PreparedDivisor {
    pub index: usize,
    pub poly: KPoly,
    pub degree: u32,
    pub g: EntireFn,
    coeffs: Vec<Vec<Complex64>>,
}

impl PreparedDivisor {
    pub fn new(curve: &CurveSpec, d: &KPoly, index: usize) -> Result<Self> {
        let g = curve.divisor_function(d, index)?;
        Ok(PreparedDivisor {
            index,
            poly: d.clone(),
            degree: d.total_degree(),
            g,
            coeffs: d.terms().map(|(_, c)| to_f64_coeffs(c.num())).collect(),
        })
    }

    /// `Σ_I |c_I(z)|`, so that `|D(f)| ≤ ‖D‖ ‖f‖^d`.
    pub fn coefficient_norm(&self, z: Complex64) -> f64 {
        self.coeffs.iter().map(|c| horner(c, z).norm()).sum()
    }
}

/// `m(D, r) = (1/2π)∫ log(‖D‖ ‖f‖^d / |D(f)|) dθ`, split at the arguments
/// of zeros near the circle. A zero on the circle moves `r` outward by
/// `1e−9·r`, or by twice the uncertainty of a clustered zero.
pub fn proximity(comps: &[LogComponent], d: &PreparedDivisor, zeros: &[Zero], r: f64) -> Result<f64> {
    let shift = zeros
        .iter()
        .filter(|z| (z.z.norm() - r).abs() < 1e-12 * (1.0 + r) + z.uncertainty)
        .map(|z| 1e-9 * r + 2.0 * z.uncertainty)
        .fold(0.0, f64::max);
    let r = r + shift;
    let extra: Vec<f64> = zeros
        .iter()
        .filter(|z| (z.z.norm() - r).abs() < 0.5)
        .map(|z| z.z.arg().rem_euclid(2.0 * PI))
        .collect();
    let deg = d.degree as f64;
    let f = |z: Complex64| {
        deg * log_norm(comps, z) + d.coefficient_norm(z).ln() - d.g.eval(z).log_abs()
    };
    let opts = QuadOptions {
        rel_tol: 1e-8,
        abs_tol: 1e-9,
        ..QuadOptions::default()
    };
    circle_integral(f, r, &extra, &opts)
}

//! Adaptive 7–15 point Gauss–Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Clone, Copy, Debug)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Piece {
        a,
        b,
        value: k * h,
        error: ((k - g) * h).abs(),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_pieces: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_pieces: 200_000,
        }
    }
}

/// `∫ f` over consecutive breakpoints, refining the piece with the largest
/// error estimate until the total estimate meets the tolerance.
pub fn integrate(f: impl Fn(f64) -> f64, breaks: &[f64], opts: &QuadOptions) -> Result<(f64, f64)> {
    if breaks.len() < 2 {
        return Err(Error::invalid("need at least two breakpoints"));
    }
    let mut heap: BinaryHeap<Piece> = breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| gk15(&f, w[0], w[1]))
        .collect();
    let mut value: f64 = heap.iter().map(|p| p.value).sum();
    let mut error: f64 = heap.iter().map(|p| p.error).sum();
    loop {
        if !value.is_finite() {
            return Err(Error::Quadrature("integrand is not finite".into()));
        }
        if error <= opts.abs_tol.max(opts.rel_tol * value.abs()) {
            // Resum to shed the drift of the running totals.
            let v = heap.iter().map(|p| p.value).sum();
            let e = heap.iter().map(|p| p.error).sum();
            return Ok((v, e));
        }
        if heap.len() >= opts.max_pieces {
            return Err(Error::Quadrature(format!(
                "{} pieces, error estimate {error:e} for value {value:e}",
                heap.len()
            )));
        }
        let worst = heap.pop().expect("nonempty");
        value -= worst.value;
        error -= worst.error;
        let m = 0.5 * (worst.a + worst.b);
        let parts = if m <= worst.a || m >= worst.b {
            // Cannot split further; accept this piece as is.
            vec![Piece { error: 0.0, ..worst }]
        } else {
            vec![gk15(&f, worst.a, m), gk15(&f, m, worst.b)]
        };
        for p in parts {
            value += p.value;
            error += p.error;
            heap.push(p);
        }
        error = error.max(0.0);
    }
}

/// Evenly spaced breakpoints on `[a, b]` merged with extra points.
pub fn breakpoints(a: f64, b: f64, pieces: usize, extra: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = (0..=pieces).map(|k| a + (b - a) * k as f64 / pieces as f64).collect();
    v.extend(extra.iter().copied().filter(|x| *x > a && *x < b));
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let (v, _) = integrate(|x| x * x * x - x, &[0.0, 2.0], &QuadOptions::default()).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn log_singularity() {
        // ∫_0^1 ln x dx = -1
        let (v, _) = integrate(|x: f64| x.ln(), &[0.0, 1.0], &QuadOptions::default()).unwrap();
        assert!((v + 1.0).abs() < 1e-8);
    }

    #[test]
    fn kink() {
        let (v, _) = integrate(|x: f64| x.cos().max(0.0), &[0.0, 2.0 * std::f64::consts::PI], &QuadOptions::default()).unwrap();
        assert!((v - 2.0).abs() < 1e-8);
    }
}

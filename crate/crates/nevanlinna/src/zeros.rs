//! Zeros in a disk by recursive subdivision of square cells, counting
//! with the argument principle and polishing with Newton's method.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::entire::EntireFn;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ZeroOptions {
    /// Offsets the root cell so that grid lines avoid special positions.
    pub seed: u64,
    /// Cells narrower than this with count ≥ 2 are reported as one zero.
    pub min_cell: f64,
    pub max_cells: usize,
    pub max_multiplicity: u32,
    /// Relative residual `|g| / Σ|terms|` accepted by Newton.
    pub residual: f64,
}

impl Default for ZeroOptions {
    fn default() -> Self {
        ZeroOptions {
            seed: 0,
            min_cell: 1e-6,
            max_cells: 4_000_000,
            max_multiplicity: 10,
            residual: 1e-12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Zero {
    pub z: Complex64,
    pub multiplicity: u32,
    /// Half-diagonal of the final cell for clustered zeros, else tiny.
    pub uncertainty: f64,
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    x: f64,
    y: f64,
    w: f64,
    h: f64,
}

impl Cell {
    fn square(x: f64, y: f64, w: f64) -> Cell {
        Cell { x, y, w, h: w }
    }

    fn size(&self) -> f64 {
        self.w.max(self.h)
    }

    fn center(&self) -> Complex64 {
        Complex64::new(self.x + self.w / 2.0, self.y + self.h / 2.0)
    }

    fn corners(&self) -> [Complex64; 4] {
        let (x, y, w, h) = (self.x, self.y, self.w, self.h);
        [
            Complex64::new(x, y),
            Complex64::new(x + w, y),
            Complex64::new(x + w, y + h),
            Complex64::new(x, y + h),
        ]
    }

    fn contains(&self, z: Complex64) -> bool {
        let m = self.size() * 1e-9;
        z.re >= self.x - m && z.re <= self.x + self.w + m && z.im >= self.y - m && z.im <= self.y + self.h + m
    }

    fn distance_to_origin(&self) -> f64 {
        let dx = (self.x.max(0.0)).max(-(self.x + self.w)).max(0.0);
        let dy = (self.y.max(0.0)).max(-(self.y + self.h)).max(0.0);
        dx.hypot(dy)
    }

    /// Four children meeting at the point `frac` of the way across.
    fn split(&self, frac: f64) -> [Cell; 4] {
        let (a, b) = (self.w * frac, self.h * frac);
        let (x, y) = (self.x, self.y);
        [
            Cell { x, y, w: a, h: b },
            Cell { x: x + a, y, w: self.w - a, h: b },
            Cell { x: x + a, y: y + b, w: self.w - a, h: self.h - b },
            Cell { x, y: y + b, w: a, h: self.h - b },
        ]
    }
}

fn wrap(a: f64) -> f64 {
    let mut d = a % (2.0 * PI);
    if d > PI {
        d -= 2.0 * PI;
    } else if d <= -PI {
        d += 2.0 * PI;
    }
    d
}

enum EdgeFail {
    ZeroOnEdge(Complex64),
}

/// Change of `arg g` along the segment, refined until every step turns by
/// at most `thr`, agrees with its midpoint and is short compared with
/// `|g/g′|` at its ends.
fn edge_arg(f: &EntireFn, a: Complex64, b: Complex64, thr: f64) -> std::result::Result<f64, EdgeFail> {
    let arg_at = |z: Complex64| {
        let s = f.eval(z);
        if s.relative() < 1e-14 {
            Err(EdgeFail::ZeroOnEdge(z))
        } else {
            Ok((s.value.arg(), (s.deriv / s.value).norm()))
        }
    };
    const START: usize = 8;
    let mut total = 0.0;
    type Pt = (Complex64, (f64, f64));
    let mut stack: Vec<(Pt, Pt)> = Vec::new();
    let mut prev = (a, arg_at(a)?);
    for k in 1..=START {
        let z = a + (b - a) * (k as f64 / START as f64);
        let cur = (z, arg_at(z)?);
        stack.push((prev, cur));
        prev = cur;
    }
    stack.reverse();
    let min_len = 1e-14 * (1.0 + a.norm());
    while let Some(((za, (aa, la)), (zb, (ab, lb)))) = stack.pop() {
        let len = (zb - za).norm();
        let d = wrap(ab - aa);
        let zm = (za + zb) / 2.0;
        let (am, lm) = arg_at(zm)?;
        let d1 = wrap(am - aa);
        let d2 = wrap(ab - am);
        let ok = len * la.max(lb).max(lm) <= 2.0 * thr
            && d.abs() <= thr
            && d1.abs() <= thr
            && d2.abs() <= thr
            && (d1 + d2 - d).abs() < 1e-9;
        if ok {
            total += d;
        } else if len < min_len {
            return Err(EdgeFail::ZeroOnEdge(zm));
        } else {
            stack.push(((zm, (am, lm)), (zb, (ab, lb))));
            stack.push(((za, (aa, la)), (zm, (am, lm))));
        }
    }
    Ok(total)
}

fn winding(f: &EntireFn, c: &Cell, thr: f64) -> Result<i64> {
    let k = c.corners();
    let mut total = 0.0;
    for i in 0..4 {
        total += edge_arg(f, k[i], k[(i + 1) % 4], thr).map_err(|e| match e {
            EdgeFail::ZeroOnEdge(z) => Error::Unresolved {
                reason: format!("zero on a cell edge near {z}; try another seed"),
                cells: describe(&[*c]),
            },
        })?;
    }
    let n = total / (2.0 * PI);
    let r = n.round();
    if (n - r).abs() > 0.25 {
        return Err(Error::Unresolved {
            reason: format!("winding number {n} is not close to an integer"),
            cells: describe(&[*c]),
        });
    }
    Ok(r as i64)
}

fn describe(cells: &[Cell]) -> String {
    let parts: Vec<String> = cells
        .iter()
        .take(8)
        .map(|c| format!("[{}, {}] x [{}, {}]", c.x, c.x + c.w, c.y, c.y + c.h))
        .collect();
    let more = cells.len().saturating_sub(8);
    if more > 0 {
        format!("{} and {more} more", parts.join(", "))
    } else {
        parts.join(", ")
    }
}

/// Newton with multiplicity `m`; `None` when it leaves the cell or stalls.
fn newton(f: &EntireFn, c: &Cell, m: u32, residual: f64) -> Option<Complex64> {
    let mut z = c.center();
    for _ in 0..80 {
        let s = f.eval(z);
        if s.relative() < residual {
            return c.contains(z).then_some(z);
        }
        if s.deriv.norm() == 0.0 {
            return None;
        }
        let step = s.value / s.deriv * m as f64;
        z -= step;
        if !z.is_finite() || !c.contains(z) {
            return None;
        }
        if step.norm() < 1e-15 * (1.0 + z.norm()) {
            let s = f.eval(z);
            return (s.relative() < residual.sqrt()).then_some(z);
        }
    }
    None
}

enum Outcome {
    Drop,
    Found(Zero),
    Split(Vec<(Cell, i64)>),
}

fn process(f: &EntireFn, cell: Cell, count: i64, radius: f64, opts: &ZeroOptions) -> Result<Outcome> {
    if count == 0 || cell.distance_to_origin() > radius * (1.0 + 1e-12) {
        return Ok(Outcome::Drop);
    }
    if count == 1 {
        if let Some(z) = newton(f, &cell, 1, opts.residual) {
            return Ok(Outcome::Found(Zero {
                z,
                multiplicity: 1,
                uncertainty: 0.0,
            }));
        }
    }
    if count >= 2 && cell.size() < opts.min_cell {
        return cluster(f, cell, count, opts);
    }
    if cell.size() < opts.min_cell * 1e-3 {
        return Err(Error::Unresolved {
            reason: "cell too small for a simple zero".into(),
            cells: describe(&[cell]),
        });
    }
    // An off-center split moves the grid lines away from a zero that sits
    // on the midlines.
    let mut last = None;
    for frac in [0.5, 0.4621, 0.5713] {
        let children = cell.split(frac);
        for thr in [0.4, 0.1, 0.025] {
            let counts = match children.iter().map(|c| winding(f, c, thr)).collect::<Result<Vec<i64>>>() {
                Ok(c) => c,
                Err(e) => {
                    last = Some(e);
                    break;
                }
            };
            if counts.iter().sum::<i64>() == count && counts.iter().all(|&n| n >= 0) {
                return Ok(Outcome::Split(children.iter().copied().zip(counts).collect()));
            }
        }
    }
    // A multiple zero is tiny in relative terms before the cell reaches
    // `min_cell`.
    if count >= 2 && cell.size() < 100.0 * opts.min_cell {
        return cluster(f, cell, count, opts);
    }
    Err(last.unwrap_or_else(|| Error::Unresolved {
        reason: "child counts do not add up to the parent count".into(),
        cells: describe(&[cell]),
    }))
}

fn cluster(f: &EntireFn, cell: Cell, count: i64, opts: &ZeroOptions) -> Result<Outcome> {
    let m = count as u32;
    if m > opts.max_multiplicity {
        return Err(Error::Unresolved {
            reason: format!("multiplicity {m} exceeds {}", opts.max_multiplicity),
            cells: describe(&[cell]),
        });
    }
    let z = newton(f, &cell, m, opts.residual).unwrap_or_else(|| cell.center());
    Ok(Outcome::Found(Zero {
        z,
        multiplicity: m,
        uncertainty: cell.w.hypot(cell.h),
    }))
}

/// All zeros with `|z| ≤ radius`, sorted by modulus and then argument.
pub fn locate_zeros(f: &EntireFn, radius: f64, opts: &ZeroOptions) -> Result<Vec<Zero>> {
    if !(radius > 0.0) {
        return Err(Error::invalid("radius must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let off = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)) * (0.01 * (1.0 + radius));
    let half = radius * 1.05 + 0.1 + off.norm();
    let root = Cell::square(off.re - half, off.im - half, 2.0 * half);
    let mut level = vec![(root, winding(f, &root, 0.4)?)];
    let mut seen = 0usize;
    let mut zeros = Vec::new();
    while !level.is_empty() {
        seen += level.len();
        if seen > opts.max_cells {
            let cells: Vec<Cell> = level.iter().map(|(c, _)| *c).collect();
            return Err(Error::Unresolved {
                reason: format!("more than {} cells", opts.max_cells),
                cells: describe(&cells),
            });
        }
        let out: Vec<Outcome> = level
            .par_iter()
            .map(|&(c, n)| process(f, c, n, radius, opts))
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for o in out {
            match o {
                Outcome::Drop => {}
                Outcome::Found(z) => zeros.push(z),
                Outcome::Split(ch) => next.extend(ch),
            }
        }
        level = next;
    }
    zeros.retain(|z| z.z.norm() <= radius);
    // Moduli are compared after rounding so that conjugate pairs keep a
    // stable order.
    let key = |z: &Zero| (z.z.norm() * 1e8).round();
    zeros.sort_by(|a, b| key(a).total_cmp(&key(b)).then(a.z.arg().total_cmp(&b.z.arg())));
    Ok(zeros)
}

/// Total count over a square containing the disk, for cross-checks.
pub fn total_winding(f: &EntireFn, radius: f64, seed: u64) -> Result<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let off = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)) * (0.01 * (1.0 + radius));
    let half = radius * 1.05 + 0.1 + off.norm();
    winding(
        f,
        &Cell::square(off.re - half, off.im - half, 2.0 * half),
        0.1,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn double_zero_at_origin() {
        let g = EntireFn::from_terms(&[(vec![0.0], vec![0.0, 0.0, 1.0])]);
        let z = locate_zeros(&g, 1.0, &ZeroOptions::default()).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].multiplicity, 2);
        assert!(z[0].z.norm() < 1e-6);
    }

    #[test]
    fn exp_minus_one() {
        let g = EntireFn::from_terms(&[(vec![0.0, 1.0], vec![1.0]), (vec![0.0], vec![-1.0])]);
        let z = locate_zeros(&g, 7.0, &ZeroOptions::default()).unwrap();
        assert_eq!(z.len(), 3);
        assert!(z.iter().all(|z| z.multiplicity == 1));
        assert!(approx(z[0].z, Complex64::new(0.0, 0.0)));
        let tau = 2.0 * PI;
        assert!(approx(z[1].z, Complex64::new(0.0, -tau)));
        assert!(approx(z[2].z, Complex64::new(0.0, tau)));
    }

    #[test]
    fn exp_has_no_zeros() {
        let g = EntireFn::from_terms(&[(vec![0.0, 1.0], vec![1.0])]);
        assert!(locate_zeros(&g, 100.0, &ZeroOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn cubic_roots() {
        // (z - 1)(z + 2)
        let g = EntireFn::from_terms(&[(vec![0.0], vec![-1.0, 1.0])])
            .product(&EntireFn::from_terms(&[(vec![0.0], vec![2.0, 1.0])]));
        let z = locate_zeros(&g, 5.0, &ZeroOptions::default()).unwrap();
        assert_eq!(z.len(), 2);
        assert!(approx(z[0].z, Complex64::new(1.0, 0.0)));
        assert!(approx(z[1].z, Complex64::new(-2.0, 0.0)));
    }

    #[test]
    fn seed_changes_nothing_observable() {
        let g = EntireFn::from_terms(&[(vec![0.0, 1.0], vec![1.0]), (vec![0.0], vec![-1.0])]);
        let a = locate_zeros(&g, 20.0, &ZeroOptions { seed: 1, ..Default::default() }).unwrap();
        let b = locate_zeros(&g, 20.0, &ZeroOptions { seed: 2, ..Default::default() }).unwrap();
        assert_eq!(a.len(), b.len());
        for x in &a {
            assert!(b.iter().any(|y| approx(x.z, y.z)));
        }
        assert_eq!(total_winding(&g, 20.0, 3).unwrap(), a.len() as i64);
    }
}

//! Univariate factorization over ℤ: Berlekamp modulo a small prime,
//! quadratic Hensel lifting along a factor tree, and subset recombination.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{self, PolyP};

/// Integer coefficients low→high, no trailing zeros.
pub type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    ztrim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()
            })
            .collect(),
    )
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    ztrim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()
            })
            .collect(),
    )
}

fn zscale(a: &[BigInt], c: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|x| x * c).collect())
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r: Vec<BigInt> = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), zmod(&r, m));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    r.truncate(db);
    (zmod(&q, m), zmod(&r, m))
}

fn to_modp(a: &[BigInt], p: u64) -> PolyP {
    let pb = BigInt::from(p);
    modp::trim(
        a.iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced"))
            .collect(),
    )
}

fn from_modp(a: &PolyP) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// One quadratic Hensel step: from `f ≡ g h`, `s g + t h ≡ 1 (mod m)` with
/// `h` monic, produce the same relations modulo `m²`.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &m2);
    let g2 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h2 = zmod(&zadd(h, &r), &m2);
    let b = zmod(
        &zsub(&zadd(&zmul(s, &g2), &zmul(t, &h2)), &[BigInt::one()]),
        &m2,
    );
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h2, &m2);
    let s2 = zmod(&zsub(s, &d), &m2);
    let t2 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g2)), &m2);
    (g2, h2, s2, t2)
}

/// Lifts monic factors of `f mod p` to monic factors modulo `p^(2^levels)`.
fn lift_tree(f: &[BigInt], facs: &[PolyP], p: u64, levels: u32) -> Vec<ZPoly> {
    let big_m = BigInt::from(p).pow(1u32 << levels);
    if facs.len() == 1 {
        let lc = f.last().expect("nonzero");
        let inv = mod_inverse(lc, &big_m);
        return vec![zmod(&zscale(f, &inv), &big_m)];
    }
    let k = facs.len() / 2;
    let (left, right) = facs.split_at(k);
    let lcp = to_modp(&[f.last().unwrap().clone()], p);
    let mut g0: PolyP = lcp;
    for a in left {
        g0 = modp::mul(&g0, a, p);
    }
    let mut h0: PolyP = vec![1];
    for a in right {
        h0 = modp::mul(&h0, a, p);
    }
    let (one, s0, t0) = modp::xgcd(&g0, &h0, p);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (from_modp(&g0), from_modp(&h0), from_modp(&s0), from_modp(&t0));
    let mut m = BigInt::from(p);
    for _ in 0..levels {
        let r = hensel_step(f, &g, &h, &s, &t, &m);
        g = r.0;
        h = r.1;
        s = r.2;
        t = r.3;
        m = &m * &m;
    }
    let mut out = lift_tree(&g, left, p, levels);
    out.extend(lift_tree(&h, right, p, levels));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: &[BigInt]) -> ZPoly {
    let c = content(a);
    if c.is_zero() {
        return a.to_vec();
    }
    let mut v: ZPoly = a.iter().map(|x| x / &c).collect();
    if v.last().is_some_and(|l| l.sign() == Sign::Minus) {
        v = v.into_iter().map(|x| -x).collect();
    }
    v
}

/// Exact quotient over ℤ, or `None`.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut r: Vec<BigInt> = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(ztrim(q))
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Irreducible factors over ℤ of a squarefree primitive polynomial of
/// positive degree with positive leading coefficient.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    // Pick, among the first few suitable primes, one giving the fewest
    // modular factors.
    let mut best: Option<(usize, u64)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_modp(f, p);
        if modp::deg(&fp) != Some(n) {
            continue;
        }
        let g = modp::gcd(&fp, &modp::derivative(&fp, p), p);
        if modp::deg(&g) != Some(0) {
            continue;
        }
        let count = modp::factor_count(&modp::monic(&fp, p), p);
        if best.is_none_or(|(c, _)| count < c) {
            best = Some((count, p));
        }
        tried += 1;
        if count == 1 || tried >= 5 {
            break;
        }
    }
    let (count, p) = best.expect("some prime is suitable");
    if count == 1 {
        return vec![f.to_vec()];
    }
    let facs = modp::factor_squarefree(&modp::monic(&to_modp(f, p), p), p);

    // Mignotte-style bound on factor coefficients: 2^n * ||f||_2.
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm2;
    let mut levels = 0u32;
    while BigInt::from(p).pow(1u32 << levels) <= bound {
        levels += 1;
    }
    let big_m = BigInt::from(p).pow(1u32 << levels);
    let mut lifted = lift_tree(f, &facs, p, levels);

    let mut result = Vec::new();
    let mut fcur = f.to_vec();
    let mut size = 1;
    'search: while 2 * size <= lifted.len() {
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let lcf = fcur.last().unwrap().clone();
            let mut g: ZPoly = vec![lcf];
            for &i in &idx {
                g = zmod(&zmul(&g, &lifted[i]), &big_m);
            }
            let g = primitive(&symmetric(&g, &big_m));
            if g.len() > 1 {
                if let Some(q) = zdiv_exact(&fcur, &g) {
                    result.push(g);
                    fcur = q;
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    continue 'search;
                }
            }
            // Next combination in lexicographic order.
            let mut i = size;
            loop {
                if i == 0 {
                    size += 1;
                    continue 'search;
                }
                i -= 1;
                if idx[i] < r - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if fcur.len() > 1 {
        result.push(primitive(&fcur));
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn prod(fs: &[ZPoly]) -> ZPoly {
        fs.iter().fold(z(&[1]), |acc, f| zmul(&acc, f))
    }

    #[test]
    fn x4_plus_1_is_irreducible() {
        // Reducible modulo every prime, so recombination must reject all pairs.
        assert_eq!(factor_squarefree(&z(&[1, 0, 0, 0, 1])).len(), 1);
    }

    #[test]
    fn splits_product_with_nonmonic_factors() {
        let a = z(&[1, 2]); // 2x + 1
        let b = z(&[-3, 0, 5]); // 5x^2 - 3
        let c = z(&[7, 1, 0, 1]); // x^3 + x + 7
        let f = prod(&[a.clone(), b.clone(), c.clone()]);
        let mut fs = factor_squarefree(&f);
        fs.sort();
        let mut want = vec![a, b, c];
        want.sort();
        assert_eq!(fs, want);
    }

    #[test]
    fn swinnerton_dyer_style_product() {
        // (x^2 - 2)(x^2 - 3)(x^2 - 5)(x - 1)
        let f = prod(&[z(&[-2, 0, 1]), z(&[-3, 0, 1]), z(&[-5, 0, 1]), z(&[-1, 1])]);
        let fs = factor_squarefree(&f);
        assert_eq!(fs.len(), 4);
        assert_eq!(prod(&fs), f);
    }
}

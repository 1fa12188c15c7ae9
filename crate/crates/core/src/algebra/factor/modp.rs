//! Dense polynomials over a small prime field and Berlekamp factorization.

/// Coefficients low→high, reduced into `[0, p)`, no trailing zeros.
pub type PolyP = Vec<u64>;

pub fn trim(mut a: PolyP) -> PolyP {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &PolyP) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn add(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub fn scale(a: &PolyP, c: u64, p: u64) -> PolyP {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub fn monic(a: &PolyP, p: u64) -> PolyP {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

pub fn divrem(a: &PolyP, b: &PolyP, p: u64) -> (PolyP, PolyP) {
    let db = deg(b).expect("division by zero polynomial");
    if a.len() <= db {
        return (Vec::new(), a.clone());
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * inv % p;
        if c == 0 {
            continue;
        }
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p - c * bj % p) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    divrem(a, b, p).1
}

pub fn gcd(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let mut a = monic(a, p);
    let mut b = monic(b, p);
    while !b.is_empty() {
        let r = monic(&rem(&a, &b, p), p);
        a = b;
        b = r;
    }
    a
}

/// Extended gcd: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn xgcd(a: &PolyP, b: &PolyP, p: u64) -> (PolyP, PolyP, PolyP) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let l = inv_mod(*r0.last().expect("nonzero gcd"), p);
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub fn derivative(a: &PolyP, p: u64) -> PolyP {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

/// `x^e mod f`.
fn x_pow_mod(e: u64, f: &PolyP, p: u64) -> PolyP {
    let mut result: PolyP = vec![1];
    let mut base: PolyP = rem(&vec![0, 1], f, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &base, p), f, p);
        }
        base = rem(&mul(&base, &base, p), f, p);
        e >>= 1;
    }
    result
}

/// Basis of the Berlekamp subalgebra `{v : v^p ≡ v mod f}` for monic
/// squarefree `f`; its dimension is the number of irreducible factors.
fn berlekamp_basis(f: &PolyP, p: u64) -> Vec<PolyP> {
    let n = deg(f).unwrap();
    // Row i of Q holds x^{ip} mod f.
    let xp = x_pow_mod(p, f, p);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur: PolyP = vec![1];
    for _ in 0..n {
        let mut row = cur.clone();
        row.resize(n, 0);
        rows.push(row);
        cur = rem(&mul(&cur, &xp, p), f, p);
    }
    // Nullspace of (Q - I)^T: vectors v with v Q = v.
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|j| (0..n).map(|i| {
            let q = rows[i][j];
            if i == j { (q + p - 1) % p } else { q }
        }).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..n).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for k in 0..n {
                    m[i][k] = (m[i][k] + p - factor * m[r][k] % p) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - m[row][fc]) % p;
            }
            trim(v)
        })
        .collect()
}

/// Number of distinct irreducible factors of a monic squarefree `f`.
pub fn factor_count(f: &PolyP, p: u64) -> usize {
    if deg(f).unwrap_or(0) <= 1 {
        return 1;
    }
    berlekamp_basis(f, p).len()
}

/// Monic irreducible factors of a monic squarefree `f` over `GF(p)`, sorted.
pub fn factor_squarefree(f: &PolyP, p: u64) -> Vec<PolyP> {
    let n = deg(f).expect("nonzero");
    if n <= 1 {
        return vec![f.clone()];
    }
    let basis = berlekamp_basis(f, p);
    let k = basis.len();
    let mut factors = vec![f.clone()];
    if k == 1 {
        return factors;
    }
    'outer: for v in basis.iter().filter(|v| v.len() > 1) {
        for s in 0..p {
            let vs = sub(v, &vec![s], p);
            let mut next = Vec::with_capacity(factors.len() + 1);
            for u in factors.drain(..) {
                if deg(&u).unwrap() <= 1 {
                    next.push(u);
                    continue;
                }
                let g = gcd(&u, &vs, p);
                let dg = deg(&g).unwrap_or(0);
                if dg > 0 && dg < deg(&u).unwrap() {
                    let (q, _) = divrem(&u, &g, p);
                    next.push(g);
                    next.push(monic(&q, p));
                } else {
                    next.push(u);
                }
            }
            factors = next;
            if factors.len() == k {
                break 'outer;
            }
        }
    }
    factors.sort();
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_multiply_back() {
        let p = 7;
        // (x+1)(x+2)(x^2+1) over GF(7); x^2+1 is irreducible since 7 ≡ 3 mod 4.
        let f = mul(&mul(&vec![1, 1], &vec![2, 1], p), &vec![1, 0, 1], p);
        let fs = factor_squarefree(&f, p);
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(vec![1u64], |acc, g| mul(&acc, g, p));
        assert_eq!(prod, f);
    }

    #[test]
    fn xgcd_identity() {
        let p = 11;
        let a = vec![3, 0, 1];
        let b = vec![1, 1];
        let (g, s, t) = xgcd(&a, &b, p);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), vec![1]);
    }
}

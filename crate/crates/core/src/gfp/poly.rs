//! Dense univariate polynomials over a prime field GF(p).
//!
//! Coefficients are stored low degree first; the zero polynomial is the empty
//! vector. All functions return trimmed results.

pub type Poly = Vec<u32>;

pub fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn inv_mod(x: u32, p: u32) -> u32 {
    debug_assert!(x % p != 0);
    pow_mod(x, p - 2, p)
}

pub fn pow_mod(mut x: u32, mut n: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = (x % p) as u64;
    let p64 = p as u64;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        n >>= 1;
    }
    x = acc as u32;
    x
}

pub fn add(f: &[u32], g: &[u32], p: u32) -> Poly {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| (f.get(i).copied().unwrap_or(0) + g.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

pub fn sub(f: &[u32], g: &[u32], p: u32) -> Poly {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| (f.get(i).copied().unwrap_or(0) + p - g.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

pub fn mul(f: &[u32], g: &[u32], p: u32) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a as u64 * b as u64) % p64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Quotient and remainder of `f` by the nonzero polynomial `g`.
pub fn divrem(f: &[u32], g: &[u32], p: u32) -> (Poly, Poly) {
    let dg = degree(g).expect("division by zero polynomial");
    let lead_inv = inv_mod(g[dg], p) as u64;
    let p64 = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let df = match degree(f) {
        Some(d) if d >= dg => d,
        _ => return (Vec::new(), trim(f.to_vec())),
    };
    let mut q = vec![0u64; df - dg + 1];
    for k in (0..=df - dg).rev() {
        let c = r[k + dg] % p64 * lead_inv % p64;
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (j, &gj) in g.iter().enumerate().take(dg + 1) {
            r[k + j] = (r[k + j] + (p64 - c) * gj as u64) % p64;
        }
    }
    r.truncate(dg);
    (
        trim(q.into_iter().map(|c| c as u32).collect()),
        trim(r.into_iter().map(|c| c as u32).collect()),
    )
}

pub fn rem(f: &[u32], g: &[u32], p: u32) -> Poly {
    divrem(f, g, p).1
}

pub fn monic(f: &[u32], p: u32) -> Poly {
    match degree(f) {
        None => Vec::new(),
        Some(d) => {
            let inv = inv_mod(f[d], p) as u64;
            f[..=d].iter().map(|&c| (c as u64 * inv % p as u64) as u32).collect()
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(f: &[u32], g: &[u32], p: u32) -> Poly {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

pub fn mulmod(f: &[u32], g: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(f, g, p), m, p)
}

/// `f^n mod m` for a machine-sized exponent.
pub fn powmod(f: &[u32], mut n: u64, m: &[u32], p: u32) -> Poly {
    let mut acc: Poly = rem(&[1], m, p);
    let mut base = rem(f, m, p);
    while n > 0 {
        if n & 1 == 1 {
            acc = mulmod(&acc, &base, m, p);
        }
        base = mulmod(&base, &base, m, p);
        n >>= 1;
    }
    acc
}

/// Rabin-style test: `f` of degree `n` is irreducible iff it has no factor of
/// degree at most `n/2`, i.e. `gcd(f, x^{p^k} - x) = 1` for `1 <= k <= n/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = match degree(f) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut xp = rem(&x, f, p);
    for _ in 1..=n / 2 {
        xp = powmod(&xp, p as u64, f, p);
        let g = gcd(f, &sub(&xp, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Distinct-degree pieces of `f`: for each `k`, the squarefree product of the
/// distinct monic irreducible factors of degree `k`. Pieces of degree 0 are
/// omitted.
pub fn distinct_degree_pieces(f: &[u32], p: u32) -> Vec<(usize, Poly)> {
    let mut rest = monic(f, p);
    let mut out = Vec::new();
    let x: Poly = vec![0, 1];
    let mut k = 0usize;
    // x^{p^k} mod rest, updated one Frobenius step at a time
    let mut xpk = x.clone();
    while degree(&rest).unwrap_or(0) > 0 {
        k += 1;
        if 2 * k > degree(&rest).unwrap() {
            // Every factor has degree >= k, so a remainder of degree < 2k is
            // itself irreducible.
            out.push((degree(&rest).unwrap(), rest));
            break;
        }
        xpk = powmod(&rem(&xpk, &rest, p), p as u64, &rest, p);
        let g = gcd(&rest, &sub(&xpk, &x, p), p);
        if degree(&g).unwrap_or(0) > 0 {
            loop {
                let h = gcd(&rest, &g, p);
                if degree(&h).unwrap_or(0) == 0 {
                    break;
                }
                rest = divrem(&rest, &h, p).0;
            }
            out.push((k, g));
        }
    }
    out
}

/// Roots of `f` in GF(p) by exhaustive evaluation.
pub fn roots(f: &[u32], p: u32) -> Vec<u32> {
    (0..p).filter(|&x| eval(f, x, p) == 0).collect()
}

pub fn eval(f: &[u32], x: u32, p: u32) -> u32 {
    let p64 = p as u64;
    f.iter()
        .rev()
        .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p64) as u32
}

//! Dense polynomials over a prime field, just enough to pick a modulus and
//! a primitive element. Coefficients are ascending (`c[0]` is the constant).

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_p(a: u64, p: u64) -> u64 {
    crate::arith::inv_mod(a, p).expect("nonzero residue modulo a prime")
}

/// Remainder of `a` modulo `m` (`m` nonzero).
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let dm = degree(m).expect("nonzero modulus");
    let lead_inv = inv_p(m[dm], p);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] * lead_inv % p;
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate().take(dm + 1) {
            let sub = factor * c % p;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
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

pub(crate) fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn pow_mod(base: &[u64], mut exp: u128, m: &[u64], p: u64) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    rem(&acc, m, p)
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test: `f` of degree `d` is irreducible iff
/// `gcd(x^(p^i) - x, f) = 1` for every `1 <= i <= d/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    let mut power = rem(&x, f, p);
    for _ in 1..=d / 2 {
        power = pow_mod(&power, p as u128, f, p);
        let g = gcd(&sub(&power, &x, p), f, p);
        if degree(&g).is_some_and(|dg| dg > 0) {
            return false;
        }
    }
    true
}

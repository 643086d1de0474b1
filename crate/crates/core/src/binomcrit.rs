//! Permutation tests for `f(x) = x^r (x^{q-1} + a)` over `F_{q^e}`.
//!
//! Two independent routes decide whether `f` permutes the field:
//!
//! * [`mpw_is_permutation`], the Hermite-type criterion specialised to
//!   binomials: `f` permutes iff for every `N` in `1..=q^e-1`
//!   `Σ_{A ∈ S_N} C(N, A) a^{N-A}` is `0` (or `1` when `N = q^e - 1`),
//!   where `S_N = { A_j = jℓ - rN/(q-1) : j ∈ Z, 0 <= A_j <= N }`.
//! * [`brute_force_is_permutation`], which evaluates `f` everywhere.

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{add_mod, sub_mod, FieldElement, FieldParams};

/// `ℓ = q^{e-1} + ... + q + 1 = (q^e - 1)/(q - 1)`.
pub fn ell(q: u64, e: u32) -> u64 {
    (0..e).fold(0u64, |acc, _| acc * q + 1)
}

/// A candidate binomial `x^r (x^{q-1} + a)` over a concrete field.
///
/// `r` is normalised into `[1, q^e - 1]`: nonzero points only see `r` modulo
/// `q^e - 1`, and `f(0) = 0` for every `r >= 1`.
#[derive(Clone, Copy, Debug)]
pub struct BinomialSpec<'f> {
    field: &'f FieldParams,
    r: u64,
    a: FieldElement,
}

impl<'f> BinomialSpec<'f> {
    pub fn new(field: &'f FieldParams, r: u64, a: FieldElement) -> Result<Self> {
        if r == 0 {
            return Err(Error::PrecondViolated("r must be positive".into()));
        }
        if a.field_order() != field.order() {
            return Err(Error::FieldMismatch {
                left: a.field_order(),
                right: field.order(),
            });
        }
        if a.is_zero() {
            return Err(Error::ZeroCoefficient);
        }
        Ok(BinomialSpec {
            field,
            r: normalize_exponent(r, field.order() as u64),
            a,
        })
    }

    /// Shorthand for `a = ξ^a_log`.
    pub fn with_log(field: &'f FieldParams, r: u64, a_log: i128) -> Result<Self> {
        Self::new(field, r, field.from_log(a_log))
    }

    pub fn field(&self) -> &'f FieldParams {
        self.field
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    /// The step exponent `s = q - 1`.
    pub fn step(&self) -> u64 {
        self.field.q() - 1
    }

    /// `f(x) = x^r (x^{q-1} + a)`.
    pub fn eval(&self, x: FieldElement) -> Result<FieldElement> {
        let f = self.field;
        let inner = f.add(f.pow(x, self.step() as i128)?, self.a)?;
        f.mul(f.pow(x, self.r as i128)?, inner)
    }
}

/// Reduces `r >= 1` into `[1, n - 1]`, mapping multiples of `n - 1` to `n - 1`.
pub fn normalize_exponent(r: u64, n: u64) -> u64 {
    let g = n - 1;
    match r % g {
        0 => g,
        k => k,
    }
}

/// The index set `S_N` for fixed `(q, e, r, N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnSet {
    pub n_big: u64,
    /// `(j, A_j)` pairs, increasing in `j`.
    pub members: Vec<(u64, u64)>,
}

impl SnSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().map(|&(_, a)| a)
    }
}

/// Enumerates `S_N`: empty unless `(q-1) | rN`; otherwise `j` runs from
/// `⌈t/ℓ⌉` to `⌊(t+N)/ℓ⌋` with `t = rN/(q-1)` and `A_j = jℓ - t`.
pub fn compute_sn(q: u64, e: u32, r: u64, n_big: u64) -> SnSet {
    let step = (q - 1) as u128;
    let l = ell(q, e) as u128;
    let rn = r as u128 * n_big as u128;
    let mut members = Vec::new();
    if rn.is_multiple_of(step) {
        let t = rn / step;
        let lo = t.div_ceil(l);
        let hi = (t + n_big as u128) / l;
        for j in lo..=hi {
            let a = j * l - t;
            members.push((j as u64, a as u64));
        }
    }
    SnSet { n_big, members }
}

/// `(⌊N/ℓ⌋, ⌊N/ℓ⌋ + 1)`, the two possible sizes of `S_N` when `(q-1) | rN`.
pub fn sn_cardinality_bound(q: u64, e: u32, r: u64, n_big: u64) -> Result<(u64, u64)> {
    if !(r as u128 * n_big as u128).is_multiple_of((q - 1) as u128) {
        return Err(Error::PrecondViolated(format!(
            "q - 1 = {} does not divide rN = {r}*{n_big}",
            q - 1
        )));
    }
    let lower = n_big / ell(q, e);
    Ok((lower, lower + 1))
}

/// `C(n, k) mod p` by Lucas' theorem; `C(n, k) = 0` when `n < k`.
pub fn lucas_binom_mod_p(n: u64, k: u64, p: u64) -> u64 {
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64 % p;
    while k > 0 || n > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        acc = acc * small_binom_mod_p(ni, ki, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn small_binom_mod_p(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * arith::inv_mod(den, p).expect("digits are below p") % p
}

/// Factorial tables for repeated Lucas evaluations with a fixed prime.
#[derive(Clone, Debug)]
pub struct LucasTable {
    p: u64,
    fact: Vec<u64>,
    inv_fact: Vec<u64>,
}

impl LucasTable {
    pub fn new(p: u64) -> Self {
        let mut fact = vec![1u64; p as usize];
        for i in 1..p as usize {
            fact[i] = fact[i - 1] * i as u64 % p;
        }
        let mut inv_fact = vec![1u64; p as usize];
        inv_fact[p as usize - 1] = arith::inv_mod(fact[p as usize - 1], p).unwrap_or(1);
        for i in (1..p as usize).rev() {
            inv_fact[i - 1] = inv_fact[i] * i as u64 % p;
        }
        LucasTable { p, fact, inv_fact }
    }

    pub fn binom(&self, mut n: u64, mut k: u64) -> u64 {
        let p = self.p;
        let mut acc = 1 % p;
        while k > 0 {
            let (ni, ki) = ((n % p) as usize, (k % p) as usize);
            if ki > ni {
                return 0;
            }
            acc = acc * self.fact[ni] % p * self.inv_fact[ki] % p * self.inv_fact[ni - ki] % p;
            n /= p;
            k /= p;
        }
        acc
    }
}

/// `Σ_{A ∈ S_N} C(N, A) a^{N-A}` in `F_{q^e}`.
pub fn mpw_sum(spec: &BinomialSpec<'_>, n_big: u64) -> FieldElement {
    mpw_sum_with(spec, n_big, &LucasTable::new(spec.field.p()))
}

fn mpw_sum_with(spec: &BinomialSpec<'_>, n_big: u64, lucas: &LucasTable) -> FieldElement {
    let f = spec.field;
    let group = f.group_order() as u128;
    let a_log = spec.a.log().expect("a is nonzero") as u128;
    let sn = compute_sn(f.q(), f.e(), spec.r, n_big);
    let mut acc = f.zero();
    for a_val in sn.values() {
        let c = lucas.binom(n_big, a_val);
        if c == 0 {
            continue;
        }
        let power = (a_log * (n_big - a_val) as u128 % group) as u32;
        let coeff = f.from_int(c).log().expect("nonzero residue");
        let term = f.elem(add_mod(coeff, power, f.group_order()));
        acc = f.add_unchecked(acc, term);
    }
    acc
}

/// Decides permutation through the coefficient-sum criterion.
///
/// Only `N` with `(q-1) | rN` can give a nonempty `S_N`, so the zero checks
/// visit multiples of `(q-1)/gcd(r, q-1)`; the `N = q^e - 1` check runs last.
pub fn mpw_is_permutation(spec: &BinomialSpec<'_>) -> bool {
    let f = spec.field;
    let n = f.order() as u64;
    let step = f.q() - 1;
    let stride = step / arith::gcd(spec.r, step);
    let lucas = LucasTable::new(f.p());
    let mut n_big = stride;
    while n_big <= n - 2 {
        if !mpw_sum_with(spec, n_big, &lucas).is_zero() {
            return false;
        }
        n_big += stride;
    }
    mpw_sum_with(spec, n - 1, &lucas) == f.one()
}

/// Reusable image bitmap for brute-force evaluation over one field.
#[derive(Clone, Debug)]
pub struct PermutationTester<'f> {
    field: &'f FieldParams,
    seen: Vec<u64>,
}

impl<'f> PermutationTester<'f> {
    pub fn new(field: &'f FieldParams) -> Self {
        let words = (field.group_order() as usize).div_ceil(64);
        PermutationTester {
            field,
            seen: vec![0; words],
        }
    }

    /// Brute force with `a = ξ^a_log`; `r` is any positive exponent.
    pub fn is_permutation(&mut self, r: u64, a_log: u32) -> bool {
        let f = self.field;
        let g = f.group_order();
        let step = ((f.q() - 1) % g as u64) as u32;
        let r_step = (r % g as u64) as u32;
        self.seen.iter_mut().for_each(|w| *w = 0);

        // x = ξ^k; u = k(q-1) mod g, v = kr mod g
        let (mut u, mut v) = (0u32, 0u32);
        for _ in 0..g {
            // ξ^u + ξ^a = ξ^a (1 + ξ^{u-a})
            let Some(z) = f.zech(sub_mod(u, a_log, g)) else {
                // f(x) = 0 = f(0) for a nonzero x
                return false;
            };
            let image = add_mod(add_mod(a_log, z, g), v, g) as usize;
            let (word, bit) = (image / 64, 1u64 << (image % 64));
            if self.seen[word] & bit != 0 {
                return false;
            }
            self.seen[word] |= bit;
            u = add_mod(u, step, g);
            v = add_mod(v, r_step, g);
        }
        true
    }
}

/// Evaluates `f` at every point and checks that all images are distinct.
pub fn brute_force_is_permutation(spec: &BinomialSpec<'_>) -> bool {
    let a_log = spec.a.log().expect("a is nonzero");
    PermutationTester::new(spec.field).is_permutation(spec.r, a_log)
}

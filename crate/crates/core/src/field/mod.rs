//! Exact arithmetic in `F_{q^e} = F_{p^{me}}` through discrete-log tables.
//!
//! Every nonzero element is stored as its exponent with respect to a fixed
//! primitive element `ξ`. Multiplication and powering are exponent
//! arithmetic mod `n - 1`; addition goes through a Zech-logarithm table
//! (`1 + ξ^k = ξ^{Z(k)}`), so every operation is O(1).
//!
//! Construction is deterministic. The modulus is the smallest monic
//! irreducible polynomial of degree `m·e` over `F_p` and `ξ` the smallest
//! element of order `n - 1`, both in the lexicographic order that compares
//! coefficient vectors starting from the constant term.

mod poly;

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};

/// Largest field order for which tables are built unless a caller asks for more.
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 24;

const ZERO_LOG: u32 = u32::MAX;

/// The numeric shape of `F_{q^e}` with `q = p^m`, independent of any model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldShape {
    p: u64,
    m: u32,
    e: u32,
}

impl FieldShape {
    pub fn new(p: u64, m: u32, e: u32) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidParams("m must be at least 1".into()));
        }
        if e < 2 {
            return Err(Error::InvalidParams(format!(
                "extension degree e = {e} must be at least 2"
            )));
        }
        match arith::checked_pow(p, m * e) {
            Some(n) if n < (1u128 << 62) => Ok(FieldShape { p, m, e }),
            _ => Err(Error::InvalidParams(format!(
                "{p}^({m}*{e}) does not fit in 62 bits"
            ))),
        }
    }

    /// Builds the shape from a prime power `q` and extension degree `e`.
    pub fn from_q(q: u64, e: u32) -> Result<Self> {
        let (p, m) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        FieldShape::new(p, m, e)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// Field order `q^e`.
    pub fn n(&self) -> u64 {
        self.q().pow(self.e)
    }

    /// `ℓ = (q^e - 1)/(q - 1) = q^{e-1} + ... + q + 1`.
    pub fn ell(&self) -> u64 {
        crate::binomcrit::ell(self.q(), self.e)
    }

    /// True when `q` is an odd prime (not merely an odd prime power).
    pub fn q_is_odd_prime(&self) -> bool {
        self.m == 1 && self.p != 2
    }
}

impl fmt::Display for FieldShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{{{}^{}}} (q = {}^{})",
            self.q(),
            self.e,
            self.p,
            self.m
        )
    }
}

/// An element of a table-backed field: zero, or `ξ^k` with `k` in `[0, n-2]`.
///
/// Elements remember the order of the field they came from so that mixing
/// elements of different fields is caught.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    order: u32,
    log: u32,
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.log == ZERO_LOG
    }

    /// Discrete log with respect to `ξ`, `None` for zero.
    pub fn log(&self) -> Option<u32> {
        (!self.is_zero()).then_some(self.log)
    }

    /// Order of the field this element lives in.
    pub fn field_order(&self) -> u32 {
        self.order
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(k) => write!(f, "ξ^{k}"),
        }
    }
}

/// `F_{p^{me}}` with its modulus, primitive element and log/antilog/Zech
/// tables. Immutable after construction.
#[derive(Clone)]
pub struct FieldParams {
    shape: FieldShape,
    degree: u32,
    order: u32,
    modulus: Vec<u64>,
    xi_coeffs: Vec<u64>,
    /// log -> coefficient index
    exp: Vec<u32>,
    /// coefficient index -> log
    log: Vec<u32>,
    /// k -> log(1 + ξ^k)
    zech: Vec<u32>,
}

impl fmt::Debug for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldParams")
            .field("shape", &self.shape)
            .field("modulus", &self.modulus)
            .field("xi", &self.xi_coeffs)
            .finish_non_exhaustive()
    }
}

impl FieldParams {
    /// Builds `F_{p^{me}}` under [`DEFAULT_TABLE_LIMIT`].
    pub fn build(p: u64, m: u32, e: u32) -> Result<Self> {
        Self::build_with_limit(p, m, e, DEFAULT_TABLE_LIMIT)
    }

    pub fn build_shape(shape: FieldShape) -> Result<Self> {
        Self::build(shape.p, shape.m, shape.e)
    }

    /// Builds the field, rejecting orders above `limit` (capped at `u32::MAX`).
    pub fn build_with_limit(p: u64, m: u32, e: u32, limit: u64) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 || e < 2 {
            return Err(Error::InvalidParams(format!(
                "need m >= 1 and e >= 2, got m = {m}, e = {e}"
            )));
        }
        let limit = limit.min(u32::MAX as u64);
        let degree = m
            .checked_mul(e)
            .ok_or_else(|| Error::InvalidParams("m*e overflows".into()))?;
        let order = match arith::checked_pow(p, degree) {
            Some(n) if n <= limit as u128 => n as u32,
            Some(n) => return Err(Error::SizeExceeded { order: n, limit }),
            None => {
                return Err(Error::SizeExceeded {
                    order: u128::MAX,
                    limit,
                })
            }
        };
        let shape = FieldShape::new(p, m, e)?;
        let modulus = smallest_irreducible(p, degree as usize);
        let xi_coeffs = smallest_primitive(p, degree as usize, order, &modulus);
        let (exp, log) = power_tables(p, degree as usize, order, &modulus, &xi_coeffs)?;
        let zech = zech_table(p, &exp, &log);
        Ok(FieldParams {
            shape,
            degree,
            order,
            modulus,
            xi_coeffs,
            exp,
            log,
            zech,
        })
    }

    pub fn shape(&self) -> FieldShape {
        self.shape
    }

    pub fn p(&self) -> u64 {
        self.shape.p
    }

    pub fn m(&self) -> u32 {
        self.shape.m
    }

    pub fn e(&self) -> u32 {
        self.shape.e
    }

    pub fn q(&self) -> u64 {
        self.shape.q()
    }

    pub fn ell(&self) -> u64 {
        self.shape.ell()
    }

    /// Field order `n = q^e`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree `m·e` of the modulus over `F_p`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Monic modulus, ascending coefficients (length `degree + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Coefficient vector of `ξ`, ascending.
    pub fn xi_coeffs(&self) -> &[u64] {
        &self.xi_coeffs
    }

    /// Index of `ξ` in the base-`p` packing `Σ c_i p^i`.
    pub fn xi_index(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }

    /// The log table, indexed by packed coefficient vector (entry 0 unused).
    pub fn log_table(&self) -> &[u32] {
        &self.log
    }

    /// `n - 1`, the order of the multiplicative group.
    pub(crate) fn group_order(&self) -> u32 {
        self.order - 1
    }

    /// Zech log of `k`: `log(1 + ξ^k)`, or `None` when `ξ^k = -1`.
    #[inline]
    pub(crate) fn zech(&self, k: u32) -> Option<u32> {
        let z = self.zech[k as usize];
        (z != ZERO_LOG).then_some(z)
    }

    #[inline]
    pub(crate) fn elem(&self, log: u32) -> FieldElement {
        FieldElement {
            order: self.order,
            log,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(ZERO_LOG)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn xi(&self) -> FieldElement {
        self.from_log(1)
    }

    /// `ξ^k` for any integer `k`.
    pub fn from_log(&self, k: i128) -> FieldElement {
        let g = self.group_order() as i128;
        self.elem(k.rem_euclid(g) as u32)
    }

    /// `-1`.
    pub fn neg_one(&self) -> FieldElement {
        if self.p() == 2 {
            self.one()
        } else {
            self.elem(self.group_order() / 2)
        }
    }

    /// Image of the integer `c` in the prime subfield (`1 + 1 + ... + 1`).
    pub fn from_int(&self, c: u64) -> FieldElement {
        self.elem(self.log[(c % self.p()) as usize])
    }

    /// Element with the given ascending coefficient vector over `F_p`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.degree as usize {
            return Err(Error::InvalidElement(format!(
                "{} coefficients for a degree-{} extension",
                coeffs.len(),
                self.degree
            )));
        }
        let p = self.p();
        let mut idx: u64 = 0;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(Error::InvalidElement(format!("coefficient {c} >= p = {p}")));
            }
            idx = idx * p + c;
        }
        Ok(self.elem(self.log[idx as usize]))
    }

    /// Ascending coefficient vector of `x`, always of length `degree`.
    pub fn coeffs(&self, x: FieldElement) -> Result<Vec<u64>> {
        self.check(x)?;
        let idx = match x.log() {
            None => 0,
            Some(k) => self.exp[k as usize],
        };
        Ok(unpack(idx as u64, self.p(), self.degree as usize))
    }

    fn check(&self, x: FieldElement) -> Result<()> {
        if x.order != self.order {
            return Err(Error::FieldMismatch {
                left: x.order,
                right: self.order,
            });
        }
        Ok(())
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (x.log(), y.log()) {
            (Some(a), Some(b)) => self.elem(add_mod(a, b, self.group_order())),
            _ => self.zero(),
        })
    }

    /// `x^k`; negative `k` inverts. `0^k` is zero for `k > 0` and an error
    /// for `k <= 0`.
    pub fn pow(&self, x: FieldElement, k: i128) -> Result<FieldElement> {
        self.check(x)?;
        match x.log() {
            None if k > 0 => Ok(self.zero()),
            None => Err(Error::ZeroToNonpositive),
            Some(a) => {
                let g = self.group_order() as i128;
                let e = (a as i128 * k.rem_euclid(g)).rem_euclid(g);
                Ok(self.elem(e as u32))
            }
        }
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add_unchecked(x, y))
    }

    #[inline]
    pub(crate) fn add_unchecked(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        match (x.log(), y.log()) {
            (None, _) => y,
            (_, None) => x,
            (Some(a), Some(b)) => {
                let g = self.group_order();
                let diff = sub_mod(b, a, g);
                match self.zech(diff) {
                    None => self.zero(),
                    Some(z) => self.elem(add_mod(a, z, g)),
                }
            }
        }
    }

    pub fn neg(&self, x: FieldElement) -> Result<FieldElement> {
        self.mul(self.neg_one(), x)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let minus_y = self.neg(y)?;
        self.add(x, minus_y)
    }

    /// All `n` elements: zero first, then `ξ^0, ξ^1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        std::iter::once(self.zero()).chain((0..self.group_order()).map(|k| self.elem(k)))
    }
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, m: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= m as u64 { s - m as u64 } else { s }) as u32
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, m: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + (m - b)
    }
}

fn unpack(mut idx: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for c in out.iter_mut() {
        *c = idx % p;
        idx /= p;
    }
    out
}

/// Coefficient vector for position `t` in the constant-term-first
/// lexicographic order: `c_0` is the most significant digit of `t`.
fn lex_vector(t: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    let mut t = t;
    for c in out.iter_mut().rev() {
        *c = t % p;
        t /= p;
    }
    out
}

fn smallest_irreducible(p: u64, degree: usize) -> Vec<u64> {
    let total = p.pow(degree as u32);
    // c_0 = 0 means x divides the polynomial, so start at c_0 = 1
    let start = total / p;
    for t in start..total {
        let mut f = lex_vector(t, p, degree);
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

fn smallest_primitive(p: u64, degree: usize, order: u32, modulus: &[u64]) -> Vec<u64> {
    let group = (order - 1) as u128;
    let factors = arith::prime_factors(group as u64);
    for t in 1..order as u64 {
        let g = lex_vector(t, p, degree);
        let g_trim = poly::trim(g.clone());
        let primitive = factors
            .iter()
            .all(|&f| poly::pow_mod(&g_trim, group / f as u128, modulus, p) != vec![1]);
        if primitive {
            return g;
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

/// Antilog and log tables for powers of `xi`. Fails if `xi` is not primitive.
fn power_tables(
    p: u64,
    degree: usize,
    order: u32,
    modulus: &[u64],
    xi: &[u64],
) -> Result<(Vec<u32>, Vec<u32>)> {
    // columns[i] = x^i * xi mod modulus
    let columns: Vec<Vec<u64>> = (0..degree)
        .map(|i| {
            let mut xi_shift = vec![0u64; i];
            xi_shift.extend_from_slice(xi);
            let mut c = poly::rem(&xi_shift, modulus, p);
            c.resize(degree, 0);
            c
        })
        .collect();
    let pow_p: Vec<u64> = (0..degree).map(|i| p.pow(i as u32)).collect();

    let group = order - 1;
    let mut exp = vec![0u32; group as usize];
    let mut log = vec![ZERO_LOG; order as usize];
    let mut cur = vec![0u64; degree];
    cur[0] = 1;
    let mut next = vec![0u64; degree];
    for k in 0..group {
        let idx: u64 = cur.iter().zip(&pow_p).map(|(c, w)| c * w).sum();
        if log[idx as usize] != ZERO_LOG {
            return Err(Error::InvalidParams(format!(
                "candidate generator repeats after {k} steps"
            )));
        }
        log[idx as usize] = k;
        exp[k as usize] = idx as u32;

        next.iter_mut().for_each(|c| *c = 0);
        for (yi, col) in cur.iter().zip(&columns) {
            if *yi == 0 {
                continue;
            }
            for (acc, c) in next.iter_mut().zip(col) {
                *acc += yi * c;
            }
        }
        for (c, n) in cur.iter_mut().zip(&next) {
            *c = n % p;
        }
    }
    if cur.iter().enumerate().any(|(i, &c)| c != u64::from(i == 0)) {
        return Err(Error::InvalidParams("ξ^(n-1) != 1".into()));
    }
    Ok((exp, log))
}

fn zech_table(p: u64, exp: &[u32], log: &[u32]) -> Vec<u32> {
    exp.iter()
        .map(|&idx| {
            let c0 = idx as u64 % p;
            let bumped = idx as u64 - c0 + (c0 + 1) % p;
            if bumped == 0 {
                ZERO_LOG
            } else {
                log[bumped as usize]
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_smallest_parameters() {
        let f = FieldParams::build(2, 1, 2).unwrap();
        assert_eq!(f.order(), 4);
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // lexicographic order starting from c_0: (0,1) = x comes before (1,0) = 1,
        // and 1 has order 1, so ξ = x
        assert_eq!(f.xi_coeffs(), &[0, 1]);
    }

    #[test]
    fn f9_model() {
        let f = FieldParams::build(3, 1, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        // smallest order-8 element of F_3[i] is 1 + i
        assert_eq!(f.xi_coeffs(), &[1, 1]);
        let xi = f.xi();
        assert_eq!(f.pow(xi, 8).unwrap(), f.one());
        assert_eq!(f.pow(xi, 4).unwrap(), f.neg_one());
        assert_eq!(f.coeffs(f.neg_one()).unwrap(), vec![2, 0]);
    }

    #[test]
    fn f27_model() {
        let f = FieldParams::build(3, 1, 3).unwrap();
        assert_eq!(f.order(), 27);
        assert_eq!(f.ell(), 13);
        // x^3 + 1 and x^3 + x^2 + 1 have the root -1 and 1 respectively
        assert_eq!(f.modulus(), &[1, 0, 2, 1]);
        assert_eq!(f.neg_one(), f.from_log(13));
    }

    #[test]
    fn mul_and_pow_examples() {
        let f = FieldParams::build(3, 1, 2).unwrap();
        let x = |k| f.from_log(k);
        assert_eq!(f.mul(f.zero(), x(5)).unwrap(), f.zero());
        assert_eq!(f.mul(x(3), x(6)).unwrap(), x(1));
        assert_eq!(f.mul(x(4), x(4)).unwrap(), f.one());
        assert_eq!(f.pow(x(1), 8).unwrap(), f.one());
        assert_eq!(f.pow(x(2), 4).unwrap(), f.one());
        assert_eq!(f.pow(f.neg_one(), 7).unwrap(), f.neg_one());
        assert_eq!(f.pow(x(3), -1).unwrap(), x(5));
        assert_eq!(f.pow(x(3), 0).unwrap(), f.one());
        assert_eq!(f.pow(f.zero(), 3).unwrap(), f.zero());
        assert!(matches!(f.pow(f.zero(), 0), Err(Error::ZeroToNonpositive)));
        assert!(matches!(f.pow(f.zero(), -2), Err(Error::ZeroToNonpositive)));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let f9 = FieldParams::build(3, 1, 2).unwrap();
        let f27 = FieldParams::build(3, 1, 3).unwrap();
        let err = f9.mul(f9.xi(), f27.xi()).unwrap_err();
        assert!(matches!(err, Error::FieldMismatch { left: 27, right: 9 }));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            FieldParams::build(4, 1, 2),
            Err(Error::NotPrime(4))
        ));
        assert!(matches!(
            FieldParams::build(2, 1, 25),
            Err(Error::SizeExceeded { .. })
        ));
        assert!(FieldParams::build(3, 1, 1).is_err());
        assert!(FieldParams::build_with_limit(2, 1, 25, 1 << 25).is_ok());
    }

    #[test]
    fn xi_generates_every_nonzero_element() {
        for &(p, m, e) in &[
            (2, 1, 2),
            (2, 2, 3),
            (3, 1, 4),
            (5, 1, 3),
            (7, 1, 2),
            (2, 1, 9),
        ] {
            let f = FieldParams::build(p, m, e).unwrap();
            let mut seen = std::collections::HashSet::new();
            for k in 0..f.group_order() as i128 {
                seen.insert(f.coeffs(f.from_log(k)).unwrap());
            }
            assert_eq!(seen.len() as u32, f.order() - 1);
            assert!(!seen.contains(&vec![0; f.degree() as usize]));
        }
    }

    #[test]
    fn coefficient_round_trip_and_prime_subfield() {
        let f = FieldParams::build(5, 1, 2).unwrap();
        for x in f.elements() {
            let c = f.coeffs(x).unwrap();
            assert_eq!(f.from_coeffs(&c).unwrap(), x);
        }
        let three = f.from_int(3);
        let sum = f.add(f.add(f.one(), f.one()).unwrap(), f.one()).unwrap();
        assert_eq!(three, sum);
        assert_eq!(f.from_int(5), f.zero());
        assert!(f.from_coeffs(&[5, 0]).is_err());
    }

    #[test]
    fn shared_field_for_all_splits_of_64() {
        let a = FieldParams::build(2, 1, 6).unwrap();
        let b = FieldParams::build(2, 2, 3).unwrap();
        let c = FieldParams::build(2, 3, 2).unwrap();
        assert_eq!(a.log_table(), b.log_table());
        assert_eq!(b.log_table(), c.log_table());
        assert_eq!((a.q(), b.q(), c.q()), (2, 4, 8));
    }

    #[test]
    fn shape_accessors() {
        let s = FieldShape::from_q(9, 3).unwrap();
        assert_eq!(
            (s.p(), s.m(), s.e(), s.q(), s.n(), s.ell()),
            (3, 2, 3, 9, 729, 91)
        );
        assert!(!s.q_is_odd_prime());
        assert!(FieldShape::from_q(5, 5).unwrap().q_is_odd_prime());
        assert!(matches!(
            FieldShape::from_q(6, 2),
            Err(Error::NotPrimePower(6))
        ));
        assert!(FieldShape::from_q(3, 1).is_err());
    }
}

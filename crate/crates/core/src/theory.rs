//! Predictions and pruning that need no brute force: the linearized
//! construction family, the residue filters that rule out exponents, and the
//! proved characterizations for small extension degrees.
//!
//! Everything here is phrased in terms of `ρ = r mod ℓ`.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith;
use crate::binomcrit::BinomialSpec;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldParams, FieldShape};

/// `(-a)^ℓ != 1`. When it fails `f` has a nonzero root.
pub fn is_admissible(field: &FieldParams, a: FieldElement) -> Result<bool> {
    let minus_a = field.neg(a)?;
    Ok(field.pow(minus_a, field.ell() as i128)? != field.one())
}

/// `gcd(r, q-1) = 1` and `(-a)^ℓ != 1`.
pub fn necessary_conditions(spec: &BinomialSpec<'_>) -> bool {
    let f = spec.field();
    arith::gcd(spec.r(), f.q() - 1) == 1 && is_admissible(f, spec.a()).expect("same field")
}

/// `L(x) = x^{q^h} + a x` over a concrete field.
#[derive(Clone, Copy, Debug)]
pub struct LinearizedSpec<'f> {
    field: &'f FieldParams,
    h: u32,
    a: FieldElement,
    d: u32,
}

impl<'f> LinearizedSpec<'f> {
    pub fn new(field: &'f FieldParams, h: u32, a: FieldElement) -> Result<Self> {
        if h == 0 {
            return Err(Error::PrecondViolated("h must be positive".into()));
        }
        field.pow(a, 1)?;
        if a.is_zero() {
            return Err(Error::ZeroCoefficient);
        }
        let d = arith::gcd(field.e() as u64, h as u64) as u32;
        Ok(LinearizedSpec { field, h, a, d })
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    /// `L(x)` evaluated directly.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = self.field;
        let frob = arith::pow_mod(f.q() as u128, self.h as u128, f.order() as u128 - 1);
        // x^{q^h}: q^h is only used modulo n - 1, but 0 must stay 0
        let xq = if x.is_zero() {
            x
        } else {
            f.pow(x, frob as i128).expect("same field")
        };
        f.add(xq, f.mul(self.a, x).expect("same field"))
            .expect("same field")
    }
}

/// `L` permutes iff `(-a)^{(q^e-1)/(q^d-1)} != 1` with `d = gcd(e, h)`.
pub fn linearized_permutes(spec: &LinearizedSpec<'_>) -> bool {
    let f = spec.field;
    let q = f.q() as u128;
    let exponent = (q.pow(f.e()) - 1) / (q.pow(spec.d) - 1);
    let minus_a = f.neg(spec.a).expect("same field");
    f.pow(minus_a, exponent as i128).expect("same field") != f.one()
}

/// Kernel enumeration: true iff zero is the only root of `L` in the field.
pub fn linearized_has_trivial_kernel(spec: &LinearizedSpec<'_>) -> bool {
    spec.field
        .elements()
        .skip(1)
        .all(|x| !spec.eval(x).is_zero())
}

/// One member of the linearized construction family for a given `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructionItem {
    pub h: u32,
    /// `h^{-1} mod e`, in `[1, e]`.
    pub k: u32,
    /// `Σ_{i<k} q^{hi} mod (q^e - 1)`.
    pub base_r: u64,
    pub residue_mod_ell: u64,
}

/// A set of residues modulo `ℓ` for one `(q, e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSet {
    pub q: u64,
    pub e: u32,
    pub ell: u64,
    pub residues: BTreeSet<u64>,
}

impl ResidueSet {
    fn new(shape: FieldShape, residues: impl IntoIterator<Item = u64>) -> Self {
        let ell = shape.ell();
        let residues = residues.into_iter().map(|r| r % ell).collect();
        ResidueSet {
            q: shape.q(),
            e: shape.e(),
            ell,
            residues,
        }
    }

    pub fn contains(&self, rho: u64) -> bool {
        self.residues.contains(&(rho % self.ell))
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.residues.iter().copied().collect()
    }

    pub fn is_subset(&self, other: &ResidueSet) -> bool {
        self.residues.is_subset(&other.residues)
    }
}

/// All `h` in `[1, e-1]` coprime to `e` with their base exponents
/// `r_h = 1 + q^h + ... + q^{h(k-1)}`, each satisfying
/// `r_h (q^h - 1) ≡ q - 1 (mod q^e - 1)`.
pub fn construction_items(shape: FieldShape) -> Vec<ConstructionItem> {
    let q = shape.q() as u128;
    let e = shape.e();
    let modulus = shape.n() as u128 - 1;
    let ell = shape.ell() as u128;
    let mut items = Vec::new();
    for h in 1..e {
        if arith::gcd(h as u64, e as u64) != 1 {
            continue;
        }
        let k = match arith::inv_mod(h as u64, e as u64).expect("h coprime to e") as u32 {
            0 => e,
            k => k,
        };
        let qh = arith::pow_mod(q, h as u128, modulus);
        let mut base = 0u128;
        let mut term = 1u128;
        for _ in 0..k {
            base = (base + term) % modulus;
            term = arith::mul_mod(term, qh, modulus);
        }
        let lhs = arith::mul_mod(base, (qh + modulus - 1) % modulus, modulus);
        assert_eq!(lhs, (q - 1) % modulus, "defining congruence for h = {h}");
        items.push(ConstructionItem {
            h,
            k,
            base_r: base as u64,
            residue_mod_ell: (base % ell) as u64,
        });
    }
    items
}

/// Residues `r mod ℓ` reached by the construction family.
pub fn construction_residues(shape: FieldShape) -> ResidueSet {
    ResidueSet::new(
        shape,
        construction_items(shape)
            .iter()
            .map(|it| it.residue_mod_ell),
    )
}

/// Permutes and is a linearized binomial composed with `x^r`:
/// admissible `a`, `gcd(r, q-1) = 1` and `r mod ℓ` a construction residue.
pub fn construction_is_permutation(spec: &BinomialSpec<'_>) -> bool {
    let shape = spec.field().shape();
    necessary_conditions(spec) && construction_residues(shape).contains(spec.r())
}

/// `{1, ℓ-q}`, plus `{q^{(e+1)/2}+1, ℓ-q^{(e+1)/2}-q}` for odd `e`.
pub fn corollary_residues(shape: FieldShape) -> ResidueSet {
    let q = shape.q();
    let e = shape.e();
    let ell = shape.ell();
    let mut out = vec![1, ell - q];
    if e % 2 == 1 {
        let half = q.pow(e.div_ceil(2));
        out.push(half + 1);
        out.push(ell - half - q);
    }
    ResidueSet::new(shape, out)
}

/// The smallest `h` in `[1, e-1]` with `gcd(h, e) = 1` and
/// `r(q^h - 1) ≡ q - 1 (mod q^e - 1)`, i.e. `f(x) ≡ L(x^r)` with
/// `L(x) = x^{q^h} + a x`.
pub fn is_composition_of_linearized(shape: FieldShape, r: u64) -> Option<u32> {
    let q = shape.q() as u128;
    let modulus = shape.n() as u128 - 1;
    (1..shape.e()).find(|&h| {
        arith::gcd(h as u64, shape.e() as u64) == 1 && {
            let qh = arith::pow_mod(q, h as u128, modulus);
            arith::mul_mod(r as u128, (qh + modulus - 1) % modulus, modulus) == (q - 1) % modulus
        }
    })
}

/// The four exponent filters, in the order the search applies them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Filter {
    /// `ρ` must be `hq + 1`.
    ResidueForm,
    /// For even `e`, `q + 1` must divide `h`.
    EvenDegree,
    /// For odd `q = p^m`, `p` must divide `h`.
    OddCharacteristic,
    /// For `q, e >= 3`, `ρ` must avoid `h(ℓ - q^{e-1} - 1) + 1`, `1 <= h <= q-1`.
    BlockPattern,
}

impl Filter {
    pub const ALL: [Filter; 4] = [
        Filter::ResidueForm,
        Filter::EvenDegree,
        Filter::OddCharacteristic,
        Filter::BlockPattern,
    ];

    /// Key used in report files.
    pub fn report_key(self) -> &'static str {
        match self {
            Filter::ResidueForm => "prop41",
            Filter::EvenDegree => "prop42",
            Filter::OddCharacteristic => "prop43",
            Filter::BlockPattern => "prop45",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Filter::ResidueForm => "residue-form",
            Filter::EvenDegree => "even-degree",
            Filter::OddCharacteristic => "odd-characteristic",
            Filter::BlockPattern => "block-pattern",
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    NotOneModQ { rho: u64, q: u64 },
    NotDivisibleByQPlusOne { h: u64, q: u64 },
    NotDivisibleByP { h: u64, p: u64 },
    BlockPattern { h: u64, block: u64 },
}

impl Rejection {
    pub fn filter(&self) -> Filter {
        match self {
            Rejection::NotOneModQ { .. } => Filter::ResidueForm,
            Rejection::NotDivisibleByQPlusOne { .. } => Filter::EvenDegree,
            Rejection::NotDivisibleByP { .. } => Filter::OddCharacteristic,
            Rejection::BlockPattern { .. } => Filter::BlockPattern,
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NotOneModQ { rho: 0, .. } => write!(f, "r ≡ 0 (mod ℓ)"),
            Rejection::NotOneModQ { rho, q } => {
                write!(f, "r mod ℓ = {rho} is not of the form hq+1 (q = {q})")
            }
            Rejection::NotDivisibleByQPlusOne { h, q } => {
                write!(f, "h = {h} not divisible by q+1 = {}", q + 1)
            }
            Rejection::NotDivisibleByP { h, p } => write!(f, "h = {h} not divisible by p = {p}"),
            Rejection::BlockPattern { h, block } => {
                write!(f, "r mod ℓ = {h}·{block} + 1 (h={h})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Reject(Rejection),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

fn check_residue(shape: FieldShape, rho: u64) -> Result<()> {
    if rho >= shape.ell() {
        return Err(Error::PrecondViolated(format!(
            "residue {rho} not below ℓ = {}",
            shape.ell()
        )));
    }
    Ok(())
}

/// `ρ` must be `hq + 1` with `h >= 0`; in particular `ρ = 0` is rejected.
pub fn filter_residue_form(shape: FieldShape, rho: u64) -> Result<Verdict> {
    check_residue(shape, rho)?;
    let q = shape.q();
    Ok(if rho >= 1 && rho % q == 1 % q {
        Verdict::Pass
    } else {
        Verdict::Reject(Rejection::NotOneModQ { rho, q })
    })
}

fn h_of(shape: FieldShape, rho: u64) -> Result<u64> {
    match filter_residue_form(shape, rho)? {
        Verdict::Pass => Ok((rho - 1) / shape.q()),
        Verdict::Reject(_) => Err(Error::PrecondViolated(format!(
            "residue {rho} is not of the form hq+1"
        ))),
    }
}

/// Even `e`, `ρ = hq + 1`: passes iff `(q + 1) | h`.
pub fn filter_even_degree(shape: FieldShape, rho: u64) -> Result<Verdict> {
    if !shape.e().is_multiple_of(2) {
        return Err(Error::PrecondViolated("e must be even".into()));
    }
    let h = h_of(shape, rho)?;
    let q = shape.q();
    Ok(if h % (q + 1) == 0 {
        Verdict::Pass
    } else {
        Verdict::Reject(Rejection::NotDivisibleByQPlusOne { h, q })
    })
}

/// Odd `q = p^m`, `ρ = hq + 1`: passes iff `p | h`.
pub fn filter_odd_characteristic(shape: FieldShape, rho: u64) -> Result<Verdict> {
    if shape.p() == 2 {
        return Err(Error::PrecondViolated("q must be odd".into()));
    }
    let h = h_of(shape, rho)?;
    let p = shape.p();
    Ok(if h % p == 0 {
        Verdict::Pass
    } else {
        Verdict::Reject(Rejection::NotDivisibleByP { h, p })
    })
}

/// `q, e >= 3`: rejects `ρ = h(ℓ - q^{e-1} - 1) + 1` for `1 <= h <= q-1`.
/// Only meaningful for admissible `a`; inadmissible `a` never permute.
pub fn filter_block_pattern(shape: FieldShape, rho: u64) -> Result<Verdict> {
    if shape.q() < 3 || shape.e() < 3 {
        return Err(Error::PrecondViolated("needs q >= 3 and e >= 3".into()));
    }
    check_residue(shape, rho)?;
    let q = shape.q();
    let block = shape.ell() - q.pow(shape.e() - 1) - 1;
    if rho >= 1 && (rho - 1).is_multiple_of(block) {
        let h = (rho - 1) / block;
        if (1..q).contains(&h) {
            return Ok(Verdict::Reject(Rejection::BlockPattern { h, block }));
        }
    }
    Ok(Verdict::Pass)
}

/// Outcome of one filter on one residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilterOutcome {
    Applied(Verdict),
    NotApplicable(&'static str),
}

/// Runs every filter whose hypotheses hold for `ρ`, in [`Filter::ALL`] order.
pub fn evaluate_filters(shape: FieldShape, rho: u64) -> Result<Vec<(Filter, FilterOutcome)>> {
    let form = filter_residue_form(shape, rho)?;
    let form_ok = form.passed();
    let mut out = vec![(Filter::ResidueForm, FilterOutcome::Applied(form))];

    let even = if !shape.e().is_multiple_of(2) {
        FilterOutcome::NotApplicable("e is odd")
    } else if !form_ok {
        FilterOutcome::NotApplicable("r mod ℓ is not hq+1")
    } else {
        FilterOutcome::Applied(filter_even_degree(shape, rho)?)
    };
    out.push((Filter::EvenDegree, even));

    let odd = if shape.p() == 2 {
        FilterOutcome::NotApplicable("q is even")
    } else if !form_ok {
        FilterOutcome::NotApplicable("r mod ℓ is not hq+1")
    } else {
        FilterOutcome::Applied(filter_odd_characteristic(shape, rho)?)
    };
    out.push((Filter::OddCharacteristic, odd));

    let block = if shape.q() < 3 || shape.e() < 3 {
        FilterOutcome::NotApplicable("needs q >= 3 and e >= 3")
    } else {
        FilterOutcome::Applied(filter_block_pattern(shape, rho)?)
    };
    out.push((Filter::BlockPattern, block));
    Ok(out)
}

/// First filter (in application order) that rejects `ρ`.
pub fn first_rejection(shape: FieldShape, rho: u64) -> Option<Rejection> {
    evaluate_filters(shape, rho)
        .expect("residue below ℓ")
        .into_iter()
        .find_map(|(_, outcome)| match outcome {
            FilterOutcome::Applied(Verdict::Reject(why)) => Some(why),
            _ => None,
        })
}

/// Residues in `[0, ℓ)` that survive every applicable filter.
pub fn candidate_residues(shape: FieldShape) -> ResidueSet {
    ResidueSet::new(
        shape,
        (0..shape.ell()).filter(|&rho| first_rejection(shape, rho).is_none()),
    )
}

/// Why a residue set is known to be exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProofBasis {
    /// `e` in `{2, 3, 4}`, any `q`.
    LowDegree,
    /// `e = 5`, `q` an odd prime.
    OddPrimeQuintic,
    /// `e = 6`, `q` an odd prime.
    OddPrimeSextic,
}

impl fmt::Display for ProofBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProofBasis::LowDegree => "e <= 4, any q",
            ProofBasis::OddPrimeQuintic => "e = 5, prime q",
            ProofBasis::OddPrimeSextic => "e = 6, prime q",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Characterization {
    /// Exactly these residues give permutations (with the side conditions).
    Proved {
        residues: ResidueSet,
        basis: ProofBasis,
    },
    /// Not proved; the construction residues are the conjectured answer.
    Conjectural { residues: ResidueSet },
}

impl Characterization {
    pub fn residues(&self) -> &ResidueSet {
        match self {
            Characterization::Proved { residues, .. } => residues,
            Characterization::Conjectural { residues } => residues,
        }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, Characterization::Proved { .. })
    }
}

pub fn characterized_residues(shape: FieldShape) -> Characterization {
    let q = shape.q();
    let ell = shape.ell();
    let proved = |basis, residues: Vec<u64>| Characterization::Proved {
        residues: ResidueSet::new(shape, residues),
        basis,
    };
    match shape.e() {
        2..=4 => proved(ProofBasis::LowDegree, vec![1, ell - q]),
        5 if shape.q_is_odd_prime() => proved(
            ProofBasis::OddPrimeQuintic,
            vec![1, q.pow(3) + 1, q.pow(4) + q * q + 1, ell - q],
        ),
        6 if shape.q_is_odd_prime() => proved(ProofBasis::OddPrimeSextic, vec![1, ell - q]),
        _ => Characterization::Conjectural {
            residues: construction_residues(shape),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(q: u64, e: u32) -> FieldShape {
        FieldShape::from_q(q, e).unwrap()
    }

    fn rejects(v: Verdict) -> bool {
        !v.passed()
    }

    #[test]
    fn necessary_condition_examples() {
        let f = FieldParams::build(3, 1, 3).unwrap();
        assert!(!necessary_conditions(
            &BinomialSpec::with_log(&f, 2, 0).unwrap()
        ));
        // -1 = ξ^13, so (-ξ)^13 = ξ^{14·13} = 1
        assert!(!necessary_conditions(
            &BinomialSpec::with_log(&f, 1, 1).unwrap()
        ));
        assert!(necessary_conditions(
            &BinomialSpec::with_log(&f, 1, 0).unwrap()
        ));
        for e in 2..5 {
            let f = FieldParams::build(2, 1, e).unwrap();
            for k in 0..f.order() as i128 - 1 {
                assert!(!necessary_conditions(
                    &BinomialSpec::with_log(&f, 1, k).unwrap()
                ));
            }
        }
    }

    #[test]
    fn linearized_examples() {
        let f9 = FieldParams::build(3, 1, 2).unwrap();
        let l = LinearizedSpec::new(&f9, 1, f9.xi()).unwrap();
        assert!(linearized_permutes(&l));
        assert!(linearized_has_trivial_kernel(&l));
        let l = LinearizedSpec::new(&f9, 1, f9.from_log(2)).unwrap();
        assert!(!linearized_permutes(&l));
        assert!(!linearized_has_trivial_kernel(&l));
        // h = e: L(x) = (1 + a)x
        for k in 0..8 {
            let a = f9.from_log(k);
            let l = LinearizedSpec::new(&f9, 2, a).unwrap();
            assert_eq!(l.d(), 2);
            assert_eq!(linearized_permutes(&l), f9.neg(a).unwrap() != f9.one());
        }
    }

    #[test]
    fn construction_tables() {
        assert_eq!(construction_residues(shape(3, 3)).to_vec(), vec![1, 10]);
        for q in [2, 3, 4, 5, 7] {
            assert_eq!(construction_residues(shape(q, 2)).to_vec(), vec![1]);
        }
        assert_eq!(
            construction_residues(shape(3, 5)).to_vec(),
            vec![1, 28, 91, 118]
        );
        let items = construction_items(shape(3, 5));
        let by_h: Vec<(u32, u32, u64)> = items
            .iter()
            .map(|i| (i.h, i.k, i.residue_mod_ell))
            .collect();
        assert_eq!(by_h, vec![(1, 1, 1), (2, 3, 91), (3, 2, 28), (4, 4, 118)]);
        let e4 = construction_items(shape(3, 4));
        assert_eq!(e4[1].h, 3);
        assert_eq!(e4[1].base_r, 27 + 9 + 1);
        assert_eq!(e4[1].residue_mod_ell, 40 - 3);
    }

    #[test]
    fn construction_base_is_coprime_to_ell() {
        for (q, e) in [(2, 5), (3, 7), (4, 5), (5, 6), (7, 8), (2, 12)] {
            let s = shape(q, e);
            for item in construction_items(s) {
                assert_eq!(
                    arith::gcd(item.base_r, s.ell()),
                    1,
                    "q={q} e={e} h={}",
                    item.h
                );
            }
        }
    }

    #[test]
    fn construction_permutation_examples() {
        let f = FieldParams::build(3, 1, 3).unwrap();
        assert!(construction_is_permutation(
            &BinomialSpec::with_log(&f, 23, 0).unwrap()
        ));
        assert!(!construction_is_permutation(
            &BinomialSpec::with_log(&f, 14, 0).unwrap()
        ));
        let f81 = FieldParams::build(3, 1, 4).unwrap();
        let a = (0..80)
            .map(|k| f81.from_log(k))
            .find(|&a| is_admissible(&f81, a).unwrap())
            .unwrap();
        assert!(construction_is_permutation(
            &BinomialSpec::new(&f81, 37, a).unwrap()
        ));
    }

    #[test]
    fn corollary_examples() {
        for q in [2, 3, 5, 8] {
            assert_eq!(corollary_residues(shape(q, 2)).to_vec(), vec![1]);
        }
        assert_eq!(corollary_residues(shape(3, 3)).to_vec(), vec![1, 10]);
        assert_eq!(
            corollary_residues(shape(3, 5)).to_vec(),
            vec![1, 28, 91, 118]
        );
        for (q, e) in [(2, 7), (3, 7), (4, 5), (5, 9)] {
            let s = shape(q, e);
            assert!(corollary_residues(s).is_subset(&construction_residues(s)));
        }
    }

    #[test]
    fn residue_form_filter() {
        let s = shape(3, 3);
        assert!(rejects(filter_residue_form(s, 5).unwrap()));
        assert!(filter_residue_form(s, 1).unwrap().passed());
        assert!(rejects(filter_residue_form(s, 0).unwrap()));
        assert!(filter_residue_form(s, 13).is_err());
    }

    #[test]
    fn even_degree_filter() {
        let s = shape(3, 4);
        assert!(rejects(filter_even_degree(s, 4).unwrap()));
        assert!(filter_even_degree(s, 13).unwrap().passed());
        assert!(filter_even_degree(s, 1).unwrap().passed());
        assert!(filter_even_degree(shape(3, 3), 1).is_err());
        assert!(filter_even_degree(s, 5).is_err());
    }

    #[test]
    fn odd_characteristic_filter() {
        let s = shape(3, 3);
        assert_eq!(
            filter_odd_characteristic(s, 4).unwrap(),
            Verdict::Reject(Rejection::NotDivisibleByP { h: 1, p: 3 })
        );
        assert!(filter_odd_characteristic(s, 10).unwrap().passed());
        assert!(filter_odd_characteristic(s, 1).unwrap().passed());
        assert!(filter_odd_characteristic(shape(4, 3), 1).is_err());
    }

    #[test]
    fn block_pattern_filter() {
        let s = shape(3, 3);
        assert_eq!(
            filter_block_pattern(s, 4).unwrap(),
            Verdict::Reject(Rejection::BlockPattern { h: 1, block: 3 })
        );
        assert!(rejects(filter_block_pattern(s, 7).unwrap()));
        assert!(filter_block_pattern(s, 10).unwrap().passed());
        assert!(filter_block_pattern(shape(2, 3), 1).is_err());
        assert!(filter_block_pattern(shape(3, 2), 1).is_err());
    }

    #[test]
    fn candidate_examples() {
        assert_eq!(candidate_residues(shape(3, 3)).to_vec(), vec![1, 10]);
        assert_eq!(candidate_residues(shape(3, 4)).to_vec(), vec![1, 37]);
        let c = candidate_residues(shape(2, 3));
        assert!(c.contains(1) && c.contains(5));
    }

    #[test]
    fn characterization_examples() {
        let c = characterized_residues(shape(5, 2));
        assert_eq!(c.residues().to_vec(), vec![1]);
        assert!(c.is_proved());
        let c = characterized_residues(shape(3, 5));
        assert_eq!(c.residues().to_vec(), vec![1, 28, 91, 118]);
        let c = characterized_residues(shape(3, 6));
        assert_eq!(c.residues().to_vec(), vec![1, 361]);
        assert!(matches!(
            c,
            Characterization::Proved {
                basis: ProofBasis::OddPrimeSextic,
                ..
            }
        ));
        assert!(!characterized_residues(shape(9, 5)).is_proved());
        assert!(!characterized_residues(shape(4, 5)).is_proved());
        assert!(!characterized_residues(shape(3, 7)).is_proved());
    }

    #[test]
    fn composition_examples() {
        let s = shape(3, 3);
        assert_eq!(is_composition_of_linearized(s, 1), Some(1));
        assert_eq!(is_composition_of_linearized(s, 23), Some(2));
        assert_eq!(is_composition_of_linearized(s, 5), None);
    }

    #[test]
    fn composition_matches_construction_residues() {
        for (q, e) in [(2, 4), (3, 3), (3, 4), (4, 3), (5, 3), (2, 6), (3, 5)] {
            let s = shape(q, e);
            let residues = construction_residues(s);
            for r in 1..s.n() {
                assert_eq!(
                    is_composition_of_linearized(s, r).is_some(),
                    residues.contains(r),
                    "q={q} e={e} r={r}"
                );
            }
        }
    }
}

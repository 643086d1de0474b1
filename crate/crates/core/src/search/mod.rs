//! Exhaustive classification of permutation binomials, one field at a time,
//! and the resumable multi-field search built on top of it.

mod run;

pub use run::{run_search, Checkpoint, CompletedTask, SearchConfig, SearchSummary};

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::binomcrit::{ell, PermutationTester};
use crate::error::{Error, Result};
use crate::field::{FieldParams, FieldShape, DEFAULT_TABLE_LIMIT};
use crate::theory::{self, Filter};

/// One `(p, m, e)` split of a field order `n = p^{me}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldTask {
    pub p: u64,
    pub m: u32,
    pub e: u32,
    pub n: u64,
}

impl FieldTask {
    pub fn new(p: u64, m: u32, e: u32) -> Result<Self> {
        let shape = FieldShape::new(p, m, e)?;
        Ok(FieldTask {
            p,
            m,
            e,
            n: shape.n(),
        })
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.m)
    }

    pub fn shape(&self) -> FieldShape {
        FieldShape::new(self.p, self.m, self.e).expect("validated at construction")
    }

    /// Sort key `(n, q, e)`.
    pub fn key(&self) -> (u64, u64, u32) {
        (self.n, self.q(), self.e)
    }
}

impl Ord for FieldTask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for FieldTask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Every `(p, m, e)` with `p` prime, `m >= 1`, `e >= 2` and `p^{me} <= max_n`,
/// sorted by `(n, q, e)`.
pub fn enumerate_tasks(max_n: u64) -> Vec<FieldTask> {
    let mut tasks = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= max_n {
        if arith::is_prime(p) {
            let mut degree = 2u32;
            while arith::checked_pow(p, degree).is_some_and(|n| n <= max_n as u128) {
                for m in 1..=degree / 2 {
                    if degree.is_multiple_of(m) {
                        tasks.push(FieldTask::new(p, m, degree / m).expect("valid split"));
                    }
                }
                degree += 1;
            }
        }
        p += 1;
    }
    tasks.sort();
    tasks
}

/// A permutation `(r, a-class)`: `f(x) = x^r (x^{q-1} + ξ^j)` with `j = a_class`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PermPair {
    pub r: u64,
    pub r_mod_ell: u64,
    pub a_class: u64,
}

/// Per-filter counts of `(r, a-class)` pairs pruned before brute force.
/// Each pair is charged to the first check that removes it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterRejections {
    pub prop41: u64,
    pub prop42: u64,
    pub prop43: u64,
    pub prop45: u64,
    pub necessary: u64,
}

impl FilterRejections {
    fn bump(&mut self, filter: Filter) {
        match filter {
            Filter::ResidueForm => self.prop41 += 1,
            Filter::EvenDegree => self.prop42 += 1,
            Filter::OddCharacteristic => self.prop43 += 1,
            Filter::BlockPattern => self.prop45 += 1,
        }
    }

    pub fn get(&self, filter: Filter) -> u64 {
        match filter {
            Filter::ResidueForm => self.prop41,
            Filter::EvenDegree => self.prop42,
            Filter::OddCharacteristic => self.prop43,
            Filter::BlockPattern => self.prop45,
        }
    }
}

/// Classification result for one field task. Field order is the report
/// line's key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldReport {
    pub n: u64,
    pub p: u64,
    pub m: u32,
    pub q: u64,
    pub e: u32,
    pub ell: u64,
    pub found: Vec<PermPair>,
    pub predicted: Vec<PermPair>,
    pub conjecture_holds: bool,
    pub counterexamples: Vec<PermPair>,
    pub filter_rejections: FilterRejections,
    pub elapsed_ms: u64,
}

impl FieldReport {
    pub fn task(&self) -> FieldTask {
        FieldTask {
            p: self.p,
            m: self.m,
            e: self.e,
            n: self.n,
        }
    }

    /// One JSON Lines record (no trailing newline).
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Residues `r mod ℓ` appearing in `found`.
    pub fn found_residues(&self) -> BTreeSet<u64> {
        self.found.iter().map(|p| p.r_mod_ell).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Prune with the necessary conditions and residue filters before
    /// brute force. Off means brute force on every `(r, a-class)`.
    pub use_filters: bool,
    /// Record wall-clock time in `elapsed_ms`; off writes 0 so reports are
    /// reproducible byte for byte.
    pub timings: bool,
    pub table_limit: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            use_filters: true,
            timings: false,
            table_limit: DEFAULT_TABLE_LIMIT,
        }
    }
}

/// Finds every permutation `(r, a-class)` of one field and compares it with
/// the construction family.
///
/// One representative `a = ξ^j`, `j < q-1`, is tested per class: the
/// permutation property is constant on `ξ^j ⟨ξ^{q-1}⟩`.
pub fn classify_field(task: FieldTask, options: ClassifyOptions) -> Result<FieldReport> {
    let start = Instant::now();
    let field = FieldParams::build_with_limit(task.p, task.m, task.e, options.table_limit)?;
    let shape = field.shape();
    let n = field.order() as u64;
    let q = shape.q();
    let l = ell(q, shape.e());
    let classes = q - 1;

    let admissible: Vec<bool> = (0..classes)
        .map(|j| theory::is_admissible(&field, field.from_log(j as i128)))
        .collect::<Result<_>>()?;
    let construction = theory::construction_residues(shape);

    let mut found = Vec::new();
    let mut predicted = Vec::new();
    let mut rejections = FilterRejections::default();
    let rejecting: Vec<Option<Filter>> = if options.use_filters {
        (0..l)
            .map(|rho| theory::first_rejection(shape, rho).map(|why| why.filter()))
            .collect()
    } else {
        Vec::new()
    };
    let mut tester = PermutationTester::new(&field);

    for r in 1..n {
        let rho = r % l;
        let coprime = arith::gcd(r, classes) == 1;
        for j in 0..classes {
            let pair = PermPair {
                r,
                r_mod_ell: rho,
                a_class: j,
            };
            let necessary = coprime && admissible[j as usize];
            if necessary && construction.contains(rho) {
                predicted.push(pair);
            }
            if options.use_filters {
                if !necessary {
                    rejections.necessary += 1;
                    continue;
                }
                if let Some(filter) = rejecting[rho as usize] {
                    rejections.bump(filter);
                    continue;
                }
            }
            if tester.is_permutation(r, j as u32) {
                found.push(pair);
            }
        }
    }

    let found_set: BTreeSet<PermPair> = found.iter().copied().collect();
    let predicted_set: BTreeSet<PermPair> = predicted.iter().copied().collect();
    let counterexamples: Vec<PermPair> = found_set
        .symmetric_difference(&predicted_set)
        .copied()
        .collect();
    Ok(FieldReport {
        n,
        p: shape.p(),
        m: shape.m(),
        q,
        e: shape.e(),
        ell: l,
        found,
        predicted,
        conjecture_holds: counterexamples.is_empty(),
        counterexamples,
        filter_rejections: rejections,
        elapsed_ms: if options.timings {
            start.elapsed().as_millis() as u64
        } else {
            0
        },
    })
}

/// Brute-force outcomes for `a = ξ^{m1}` and `a = ξ^{m2}` agree whenever
/// `m1 ≡ m2 (mod q-1)`. Returns whether they did.
pub fn coset_equivalent(field: &FieldParams, r: u64, m1: u64, m2: u64) -> Result<bool> {
    let classes = field.q() - 1;
    if m1 % classes != m2 % classes {
        return Err(Error::PrecondViolated(format!(
            "{m1} and {m2} differ modulo q - 1 = {classes}"
        )));
    }
    let g = field.order() as u64 - 1;
    let mut tester = PermutationTester::new(field);
    let first = tester.is_permutation(r, (m1 % g) as u32);
    let second = tester.is_permutation(r, (m2 % g) as u32);
    Ok(first == second)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn splits(tasks: &[FieldTask]) -> Vec<(u64, u32, u32)> {
        tasks.iter().map(|t| (t.p, t.m, t.e)).collect()
    }

    #[test]
    fn enumerate_small_bounds() {
        assert_eq!(
            splits(&enumerate_tasks(10)),
            vec![(2, 1, 2), (2, 1, 3), (3, 1, 2)]
        );
        assert!(enumerate_tasks(3).is_empty());
        let at_64: Vec<_> = enumerate_tasks(64)
            .into_iter()
            .filter(|t| t.n == 64)
            .collect();
        assert_eq!(splits(&at_64), vec![(2, 1, 6), (2, 2, 3), (2, 3, 2)]);
        assert!(enumerate_tasks(27).iter().any(|t| (t.q(), t.e) == (3, 3)));
        assert_eq!(enumerate_tasks(27).len(), 7);
    }

    #[test]
    fn f27_classification() {
        let report = classify_field(FieldTask::new(3, 1, 3).unwrap(), Default::default()).unwrap();
        let pairs: Vec<(u64, u64)> = report.found.iter().map(|p| (p.r, p.a_class)).collect();
        assert_eq!(pairs, vec![(1, 0), (23, 0)]);
        assert!(report.conjecture_holds);
        assert!(report.counterexamples.is_empty());
        assert_eq!(report.elapsed_ms, 0);
    }

    #[test]
    fn f9_classification() {
        let report = classify_field(FieldTask::new(3, 1, 2).unwrap(), Default::default()).unwrap();
        let pairs: Vec<(u64, u64)> = report.found.iter().map(|p| (p.r, p.a_class)).collect();
        assert_eq!(pairs, vec![(1, 1), (5, 1)]);
        assert_eq!(report.found, report.predicted);
    }

    #[test]
    fn characteristic_two_prime_base_is_empty() {
        for e in 2..8 {
            let report =
                classify_field(FieldTask::new(2, 1, e).unwrap(), Default::default()).unwrap();
            assert!(report.found.is_empty());
            assert!(report.conjecture_holds);
        }
    }

    #[test]
    fn filter_counts_cover_every_pair() {
        let task = FieldTask::new(5, 1, 3).unwrap();
        let report = classify_field(task, Default::default()).unwrap();
        let fr = report.filter_rejections;
        let pruned = fr.prop41 + fr.prop42 + fr.prop43 + fr.prop45 + fr.necessary;
        // pruned pairs + brute-forced pairs = all (r, j)
        assert!(pruned <= (task.n - 1) * (task.q() - 1));
        assert!(fr.prop41 > 0 && fr.necessary > 0);
        assert_eq!(fr.prop42, 0);
    }

    #[test]
    fn coset_examples() {
        let f9 = FieldParams::build(3, 1, 2).unwrap();
        assert!(coset_equivalent(&f9, 1, 1, 3).unwrap());
        let f27 = FieldParams::build(3, 1, 3).unwrap();
        assert!(coset_equivalent(&f27, 1, 0, 2).unwrap());
        assert!(coset_equivalent(&f27, 7, 5, 5).unwrap());
        assert!(matches!(
            coset_equivalent(&f27, 1, 0, 1),
            Err(Error::PrecondViolated(_))
        ));
    }

    #[test]
    fn report_key_order() {
        let report = classify_field(FieldTask::new(2, 1, 2).unwrap(), Default::default()).unwrap();
        let line = report.to_json_line();
        let keys = [
            "\"n\"",
            "\"p\"",
            "\"m\"",
            "\"q\"",
            "\"e\"",
            "\"ell\"",
            "\"found\"",
            "\"predicted\"",
            "\"conjecture_holds\"",
            "\"counterexamples\"",
            "\"filter_rejections\"",
            "\"elapsed_ms\"",
        ];
        let positions: Vec<usize> = keys.iter().map(|k| line.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{line}");
        assert!(line.contains(
            "\"filter_rejections\":{\"prop41\":0,\"prop42\":0,\"prop43\":0,\"prop45\":0,\"necessary\":3}"
        ));
        let back: FieldReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, report);
    }
}

//! Whitney's first normal form: the `2^n - 1`-term alternating expansion of
//! the union's characteristic function, and inclusion-exclusion counting.
//!
//! This is the reference oracle for [`crate::tomography`]. Every
//! intersection term is recomputed from scratch (no memoisation), so the
//! [`TermCounter`] reflects the real cost of the expansion.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use thiserror::Error;

use crate::bcore::HalfInt;
use crate::indicator::Indicator;
use crate::par::{self, Execution};
use crate::tomography::SetCollection;

/// Largest collection the oracle will expand by default.
pub const DEFAULT_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WhitneyError {
    #[error("collection of {n} sets exceeds the expansion cap of {cap}")]
    TooManySets { n: usize, cap: usize },
    #[error("intersection term needs a non-empty subset")]
    EmptyMask,
    #[error("threshold m = {m} outside 0..={n}")]
    ThresholdOutOfRange { m: i64, n: usize },
}

/// A subset of member indices, bit `j` selecting member `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const fn new(bits: u32) -> Self {
        SubsetMask(bits)
    }

    /// All `n` members.
    pub fn full(n: usize) -> Self {
        assert!(n <= 32);
        SubsetMask(if n == 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Selected indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            Some(j as usize)
        })
    }

    /// Every non-empty subset of `n` members, each exactly once.
    pub fn all_nonempty(n: usize) -> impl Iterator<Item = SubsetMask> {
        assert!(n < 32);
        (1u32..(1u32 << n)).map(SubsetMask)
    }
}

/// Work done during one oracle evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TermCounter {
    pub terms_evaluated: u64,
    pub indicator_calls: u64,
}

/// Shared count of member evaluations, see [`instrument`].
#[derive(Debug, Clone, Default)]
pub struct CallCounter(Arc<AtomicU64>);

impl CallCounter {
    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.0.store(0, Ordering::Relaxed);
    }
}

/// Wraps every member so that each evaluation bumps the returned counter.
pub fn instrument<E: 'static>(c: &SetCollection<E>) -> (SetCollection<E>, CallCounter) {
    let counter = CallCounter::default();
    let wrapped = c
        .members()
        .iter()
        .map(|s| {
            let (s, hits) = (s.clone(), Arc::clone(&counter.0));
            Indicator::from_membership(s.label().to_owned(), move |x| {
                hits.fetch_add(1, Ordering::Relaxed);
                s.eval(x)
            })
        })
        .collect();
    (wrapped, counter)
}

/// Expansion oracle with a cap on the collection size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WhitneyOracle {
    cap: usize,
}

impl Default for WhitneyOracle {
    fn default() -> Self {
        WhitneyOracle { cap: DEFAULT_CAP }
    }
}

impl WhitneyOracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Caps above 30 are clamped; masks are 32-bit.
    pub fn with_cap(cap: usize) -> Self {
        WhitneyOracle { cap: cap.min(30) }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn check_size(&self, n: usize) -> Result<(), WhitneyError> {
        if n > self.cap {
            Err(WhitneyError::TooManySets { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// `prod_{j in mask} Set(x; S_j)`. Every factor is evaluated.
    pub fn intersection_term<E>(
        &self,
        c: &SetCollection<E>,
        mask: SubsetMask,
        x: &E,
        counter: &mut TermCounter,
    ) -> Result<HalfInt, WhitneyError> {
        if mask.is_empty() {
            return Err(WhitneyError::EmptyMask);
        }
        let members = c.members();
        let mut product = HalfInt::ONE;
        for j in mask.indices() {
            product = product * members[j].eval(x);
            counter.indicator_calls += 1;
        }
        counter.terms_evaluated += 1;
        Ok(product)
    }

    /// `S_k = sum over |J| = k of prod_{j in J} Set(x; S_j)` for `k = 0..=n`.
    fn layer_sums<E>(
        &self,
        c: &SetCollection<E>,
        x: &E,
        counter: &mut TermCounter,
    ) -> Result<Vec<i64>, WhitneyError> {
        let n = c.len();
        self.check_size(n)?;
        let mut sums = vec![0i64; n + 1];
        sums[0] = 1;
        for mask in SubsetMask::all_nonempty(n) {
            let term = self.intersection_term(c, mask, x, counter)?;
            sums[mask.len() as usize] += term.as_int().expect("0/1 product");
        }
        Ok(sums)
    }

    /// `sum_{k=1}^{n} (-1)^{k+1} sum_{|J|=k} Set(x; cap_J S_j)`.
    pub fn union<E>(
        &self,
        c: &SetCollection<E>,
        x: &E,
        counter: &mut TermCounter,
    ) -> Result<HalfInt, WhitneyError> {
        let sums = self.layer_sums(c, x, counter)?;
        let total: i64 = sums
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, s)| if k % 2 == 1 { *s } else { -s })
            .sum();
        Ok(HalfInt::from_int(total))
    }

    /// Partial sums of the union expansion truncated after `k = 1..=n`.
    /// Odd truncations bound the union from above, even ones from below.
    pub fn truncated_union_sums<E>(
        &self,
        c: &SetCollection<E>,
        x: &E,
    ) -> Result<Vec<i64>, WhitneyError> {
        let sums = self.layer_sums(c, x, &mut TermCounter::default())?;
        let mut acc = 0;
        Ok(sums
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, s)| {
                acc += if k % 2 == 1 { *s } else { -s };
                acc
            })
            .collect())
    }

    /// `sum_{k=0}^{n} (-1)^k sum_{|J|=k} Set(x; cap_J S_j)`; the `k = 0` term
    /// is the universe and contributes 1.
    pub fn complement_expansion<E>(
        &self,
        c: &SetCollection<E>,
        x: &E,
        counter: &mut TermCounter,
    ) -> Result<HalfInt, WhitneyError> {
        let sums = self.layer_sums(c, x, counter)?;
        let total: i64 = sums
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { *s } else { -s })
            .sum();
        Ok(HalfInt::from_int(total))
    }

    /// Elements in exactly `m` members by inclusion-exclusion:
    /// `sum_{k=m}^{n} (-1)^{k-m} C(k, m) S_k`.
    pub fn exactly_m<E>(
        &self,
        c: &SetCollection<E>,
        m: i64,
        x: &E,
        counter: &mut TermCounter,
    ) -> Result<HalfInt, WhitneyError> {
        let n = c.len();
        if m < 0 || m > n as i64 {
            return Err(WhitneyError::ThresholdOutOfRange { m, n });
        }
        let layers = self.exact_layers(c, x, counter)?;
        Ok(HalfInt::from_int(layers[m as usize]))
    }

    /// The exactly-`m` expansion for every `m = 0..=n` from one pass over the
    /// `2^n - 1` intersection terms.
    pub fn exact_layers<E>(
        &self,
        c: &SetCollection<E>,
        x: &E,
        counter: &mut TermCounter,
    ) -> Result<Vec<i64>, WhitneyError> {
        let n = c.len();
        let sums = self.layer_sums(c, x, counter)?;
        Ok((0..=n)
            .map(|m| {
                (m..=n)
                    .map(|k| {
                        let term = binomial(k, m) * sums[k];
                        if (k - m) % 2 == 0 {
                            term
                        } else {
                            -term
                        }
                    })
                    .sum()
            })
            .collect())
    }

    /// `Card(U \ union S_j)` by inclusion-exclusion over a finite universe.
    pub fn iep_cardinality<E: Sync>(
        &self,
        c: &SetCollection<E>,
        universe: &[E],
        exec: Execution,
    ) -> Result<i64, WhitneyError> {
        let n = c.len();
        self.check_size(n)?;
        let masks: Vec<SubsetMask> = SubsetMask::all_nonempty(n).collect();
        let signed = par::sum_slice(exec, &masks, |&mask| {
            let meet = universe
                .iter()
                .filter(|x| mask.indices().all(|j| c.members()[j].contains(x)))
                .count() as i64;
            if mask.len() % 2 == 0 {
                meet
            } else {
                -meet
            }
        });
        Ok(universe.len() as i64 + signed)
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Whitney expansion of the union with the default cap.
pub fn whitney_union<E>(
    c: &SetCollection<E>,
    x: &E,
    counter: &mut TermCounter,
) -> Result<HalfInt, WhitneyError> {
    WhitneyOracle::default().union(c, x, counter)
}

pub fn intersection_term<E>(
    c: &SetCollection<E>,
    mask: SubsetMask,
    x: &E,
) -> Result<HalfInt, WhitneyError> {
    WhitneyOracle::default().intersection_term(c, mask, x, &mut TermCounter::default())
}

pub fn complement_expansion<E>(c: &SetCollection<E>, x: &E) -> Result<HalfInt, WhitneyError> {
    WhitneyOracle::default().complement_expansion(c, x, &mut TermCounter::default())
}

pub fn iep_cardinality<E: Sync>(c: &SetCollection<E>, universe: &[E]) -> Result<i64, WhitneyError> {
    WhitneyOracle::default().iep_cardinality(c, universe, Execution::default())
}

/// `Card(A) = sum_{x in U} Set(x; A)`.
pub fn cardinality<E>(a: &Indicator<E>, universe: &[E]) -> i64 {
    universe
        .iter()
        .map(|x| a.eval(x).as_int().expect("0/1 indicator"))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bcore::Border;
    use crate::indicator::{complement, empty, interval_set, universe, Interval};
    use crate::tomography::{exactly_m, not_in_any, union};

    fn constant(bits: &[bool]) -> SetCollection<()> {
        bits.iter()
            .map(|&on| Indicator::from_predicate("c", move |_| on))
            .collect()
    }

    fn singletons(points: &[i64]) -> SetCollection<i64> {
        points
            .iter()
            .map(|&p| Indicator::from_predicate(format!("{{{p}}}"), move |x: &i64| *x == p))
            .collect()
    }

    #[test]
    fn masks() {
        assert_eq!(SubsetMask::all_nonempty(3).count(), 7);
        assert_eq!(SubsetMask::all_nonempty(0).count(), 0);
        assert_eq!(SubsetMask::new(0b1011).indices().collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(SubsetMask::full(4).bits(), 0b1111);
        let mut seen: Vec<u32> = SubsetMask::all_nonempty(5).map(SubsetMask::bits).collect();
        seen.dedup();
        assert_eq!(seen.len(), 31);
        assert!(seen.iter().all(|&b| b != 0 && b < 32));
    }

    #[test]
    fn pairwise_and_triple_forms() {
        for a in [false, true] {
            for bb in [false, true] {
                let c = constant(&[a, bb]);
                let mut counter = TermCounter::default();
                let got = whitney_union(&c, &(), &mut counter).unwrap();
                let (sa, sb) = (a as i64, bb as i64);
                assert_eq!(got, HalfInt::from_int(sa + sb - sa * sb));
                assert_eq!(counter.terms_evaluated, 3);
                for cc in [false, true] {
                    let c = constant(&[a, bb, cc]);
                    let mut counter = TermCounter::default();
                    let got = whitney_union(&c, &(), &mut counter).unwrap();
                    assert_eq!(got == HalfInt::ONE, a || bb || cc);
                    assert_eq!(counter.terms_evaluated, 7);
                }
            }
        }
    }

    #[test]
    fn intersection_term_examples() {
        let c = constant(&[true, false]);
        assert_eq!(intersection_term(&c, SubsetMask::new(0b01), &()), Ok(HalfInt::ONE));
        assert_eq!(intersection_term(&c, SubsetMask::new(0b11), &()), Ok(HalfInt::ZERO));
        assert_eq!(intersection_term(&c, SubsetMask::new(0), &()), Err(WhitneyError::EmptyMask));
    }

    #[test]
    fn complement_examples() {
        let c = constant(&[false, false, false]);
        assert_eq!(complement_expansion(&c, &()), Ok(HalfInt::ONE));
        assert_eq!(complement_expansion(&constant(&[]), &()), Ok(HalfInt::ONE));
        assert_eq!(complement_expansion(&constant(&[false, true]), &()), Ok(HalfInt::ZERO));
    }

    #[test]
    fn cap_enforced() {
        let c = constant(&[true; 5]);
        let small = WhitneyOracle::with_cap(4);
        assert_eq!(
            small.union(&c, &(), &mut TermCounter::default()),
            Err(WhitneyError::TooManySets { n: 5, cap: 4 })
        );
        let big = constant(&[false; 25]);
        assert!(whitney_union(&big, &(), &mut TermCounter::default()).is_err());
    }

    #[test]
    fn cardinality_examples() {
        let u: Vec<i64> = (0..100).collect();
        assert_eq!(cardinality(&universe::<i64>(), &u), 100);
        assert_eq!(cardinality(&empty::<i64>(), &u), 0);
        let iv = interval_set(Interval::closed(0i64, 9).unwrap());
        assert_eq!(cardinality(&iv, &u), 10);
    }

    #[test]
    fn iep_examples() {
        let u: Vec<i64> = (0..10).collect();
        assert_eq!(iep_cardinality(&SetCollection::<i64>::default(), &u), Ok(10));
        assert_eq!(iep_cardinality(&singletons(&[2, 7]), &u), Ok(8));
        // overlapping intervals, cross-checked by enumeration
        let c: SetCollection<i64> = [(0, 3), (2, 5), (8, 9)]
            .into_iter()
            .map(|(a, b)| interval_set(Interval::new(a, b, Border::Closed, Border::Closed).unwrap()))
            .collect();
        let direct: i64 = u.iter().map(|x| not_in_any(&c, x).as_int().unwrap()).sum();
        assert_eq!(direct, 2);
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(WhitneyOracle::new().iep_cardinality(&c, &u, exec), Ok(direct));
        }
    }

    #[test]
    fn exactly_m_matches_tomography() {
        let c: SetCollection<i64> = [(0, 6), (2, 8), (4, 9), (5, 6)]
            .into_iter()
            .map(|(a, b)| interval_set(Interval::closed(a, b).unwrap()))
            .collect();
        let oracle = WhitneyOracle::new();
        for x in -2..12 {
            for m in 0..=4 {
                let mut counter = TermCounter::default();
                assert_eq!(
                    oracle.exactly_m(&c, m, &x, &mut counter).unwrap(),
                    exactly_m(&c, m, &x).unwrap(),
                    "x={x} m={m}"
                );
            }
            let mut counter = TermCounter::default();
            assert_eq!(oracle.union(&c, &x, &mut counter).unwrap(), union(&c, &x));
            assert_eq!(counter.terms_evaluated, 15);
        }
        assert!(oracle.exactly_m(&c, 5, &0, &mut TermCounter::default()).is_err());
    }

    #[test]
    fn instrumentation_counts_calls() {
        let c = constant(&[true, false, true, true]);
        let (wrapped, calls) = instrument(&c);
        union(&wrapped, &());
        assert_eq!(calls.get(), 4);
        calls.reset();
        let mut counter = TermCounter::default();
        whitney_union(&wrapped, &(), &mut counter).unwrap();
        assert_eq!(calls.get(), counter.indicator_calls);
        assert_eq!(counter.indicator_calls, 4 * 8);
        let not = complement(&wrapped.members()[0]);
        assert_eq!(not.eval(&()), HalfInt::ZERO);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(24, 12), 2_704_156);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(3, 3), 1);
    }
}

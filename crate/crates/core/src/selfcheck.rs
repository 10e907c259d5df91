//! Embedded invariant suites run by `layerset check`.
//!
//! The scalar suites take the B implementation as a parameter so a corrupted
//! one can be fed through them.

use std::fmt;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bcore::{self, b_kronecker, HalfInt};
use crate::tomography::{self, Slice};
use crate::whitney::{TermCounter, WhitneyOracle};
use crate::workload;

type Q = Ratio<i64>;

/// A B-function on exact rationals.
pub type BFn = fn(Q, Q) -> HalfInt;

pub const RANDOM_CASES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult { name, cases: 0, failures: 0, first_failure: None }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_failure {
            None => write!(f, "PASS {:<22} {} cases", self.name, self.cases),
            Some(first) => write!(
                f,
                "FAIL {:<22} {} of {} cases failed; first: {first}",
                self.name, self.failures, self.cases
            ),
        }
    }
}

fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

fn random_q<R: Rng>(rng: &mut R) -> Q {
    const DENOMS: [i64; 4] = [1, 2, 4, 8];
    q(rng.gen_range(-40..=40), DENOMS[rng.gen_range(0..DENOMS.len())])
}

/// Small values whose sums and differences hit zero often.
fn degenerate_values() -> Vec<Q> {
    [-2, -1, 0, 1, 2].iter().flat_map(|&n| [q(n, 1), q(2 * n + 1, 2)]).collect()
}

/// `B` against its case table on random and degenerate pairs.
pub fn piecewise(bfn: BFn, seed: u64) -> SuiteResult {
    let mut res = SuiteResult::new("piecewise");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(Q, Q)> = (0..RANDOM_CASES).map(|_| (random_q(&mut rng), random_q(&mut rng))).collect();
    let small = degenerate_values();
    pairs.extend(small.iter().flat_map(|&x| small.iter().map(move |&y| (x, y))));
    for (x, y) in pairs {
        let (got, want) = (bfn(x, y), bcore::b_cases(x, y));
        res.check(got == want, || format!("B({x}, {y}) = {got}, case table gives {want}"));
    }
    res
}

/// Triples where some sign argument of the identity is zero.
pub fn degenerate_triples() -> Vec<(Q, Q, Q)> {
    let small = degenerate_values();
    let mut out = Vec::new();
    for &x in &small {
        for &y in &small {
            for &z in &small {
                let args = [x + y + z, x - y - z, x + y - z];
                if args.iter().any(|a| *a == q(0, 1)) {
                    out.push((x, y, z));
                }
            }
        }
    }
    out
}

/// `B(x, y + z) = B(x + y, z) + B(x - z, y)`.
pub fn splitting(bfn: BFn, seed: u64) -> SuiteResult {
    let mut res = SuiteResult::new("splitting");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples: Vec<(Q, Q, Q)> = (0..RANDOM_CASES)
        .map(|_| (random_q(&mut rng), random_q(&mut rng), random_q(&mut rng)))
        .collect();
    triples.extend(degenerate_triples());
    for (x, y, z) in triples {
        let lhs = bfn(x, y + z);
        let rhs = bfn(x + y, z) + bfn(x - z, y);
        res.check(lhs == rhs, || format!("x={x} y={y} z={z}: {lhs} != {rhs}"));
    }
    res
}

/// `B(m - n, eps)` is the Kronecker delta for every `eps` in `(0, 1/2]`.
pub fn kronecker(bfn: BFn) -> SuiteResult {
    let mut res = SuiteResult::new("kronecker");
    for m in -100..=100i64 {
        for n in -100..=100i64 {
            for eps in [q(1, 8), q(1, 4), q(1, 2)] {
                let got = bfn(q(m - n, 1), eps);
                res.check(got == b_kronecker(m, n), || format!("B({m} - {n}, {eps}) = {got}"));
            }
        }
    }
    res
}

/// On non-negative integers, `B(m, n)` is 1 below the diagonal, 1/2 on it
/// (except at the origin) and 0 elsewhere.
pub fn integer_table(bfn: BFn) -> SuiteResult {
    let mut res = SuiteResult::new("integer-table");
    for m in 0..=20i64 {
        for n in 0..=20i64 {
            let want = if m < n {
                HalfInt::ONE
            } else if m == n && n > 0 {
                HalfInt::HALF
            } else {
                HalfInt::ZERO
            };
            let got = bfn(q(m, 1), q(n, 1));
            res.check(got == want, || format!("B({m}, {n}) = {got}, want {want}"));
        }
    }
    res
}

/// Membership of `x` in the support of a border variant, read straight off
/// its inequalities.
fn variant_expected(kind: &str, x: Q, y: Q) -> HalfInt {
    let zero = q(0, 1);
    let (lo, hi) = if y > zero { (-y, y) } else { (y, -y) };
    let inside = match kind {
        "B++" => lo <= x && x <= hi,
        "B--" => lo < x && x < hi,
        // left border -y excluded, right border y included (for y > 0)
        "B-+" => if y > zero { lo < x && x <= hi } else { lo <= x && x < hi },
        "B+-" => if y > zero { lo <= x && x < hi } else { lo < x && x <= hi },
        _ => unreachable!(),
    };
    if !inside || y == zero {
        HalfInt::ZERO
    } else if y > zero {
        HalfInt::ONE
    } else {
        HalfInt::NEG_ONE
    }
}

/// The four border variants on a 1/16 grid that includes every border and
/// its neighbours.
pub fn border_tables() -> SuiteResult {
    let mut res = SuiteResult::new("border-tables");
    let variants: [(&str, BFn); 4] = [
        ("B++", bcore::b_pp::<Q>),
        ("B--", bcore::b_mm::<Q>),
        ("B-+", bcore::b_mp::<Q>),
        ("B+-", bcore::b_pm::<Q>),
    ];
    let ys: Vec<Q> = (-8..=8).map(|n| q(n, 4)).collect();
    let xs: Vec<Q> = (-48..=48).map(|n| q(n, 16)).collect();
    for (name, f) in variants {
        for &y in &ys {
            for &x in &xs {
                let (got, want) = (f(x, y), variant_expected(name, x, y));
                res.check(got == want, || format!("{name}({x}, {y}) = {got}, want {want}"));
            }
        }
    }
    res
}

fn direct_count<E>(c: &tomography::SetCollection<E>, x: &E) -> i64 {
    c.members().iter().filter(|s| s.contains(x)).count() as i64
}

/// Layers against direct counting, the partition identities, epsilon
/// independence and agreement with the expansion oracle, on random interval
/// collections.
pub fn layers(seed: u64, collections: usize) -> Vec<SuiteResult> {
    let mut slices = SuiteResult::new("layers");
    let mut partition = SuiteResult::new("partition");
    let mut epsilon = SuiteResult::new("epsilon-independence");
    let mut oracle_eq = SuiteResult::new("whitney-union");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let oracle = WhitneyOracle::new();
    let probes = workload::probe_grid();
    for _ in 0..collections {
        let n = rng.gen_range(1..=10usize);
        let c = workload::interval_collection(&mut rng, n);
        for x in &probes {
            let k = direct_count(&c, x);
            let union = tomography::union(&c, x);
            let mut exact_sum = HalfInt::ZERO;
            for m in 0..=n as i64 {
                let e = tomography::exactly_m(&c, m, x).expect("m in range");
                slices.check(e == HalfInt::from_int((k == m) as i64), || format!("exactly({m}) at {x}: {e}, count {k}"));
                for eps in [q(1, 8), q(1, 4)] {
                    let alt = tomography::exactly_m_with_epsilon(&c, m, x, eps).expect("eps in range");
                    epsilon.check(alt == e, || format!("exactly({m}) at {x} with eps {eps}: {alt} != {e}"));
                }
                let more = tomography::more_than_m(&c, m, x).expect("m in range");
                slices.check(more == HalfInt::from_int((k > m) as i64), || format!("morethan({m}) at {x}: {more}, count {k}"));
                if m >= 1 {
                    let at_most = tomography::at_most_m(&c, m, x).expect("m in range");
                    let want = (1 <= k && k <= m) as i64;
                    slices.check(at_most == HalfInt::from_int(want), || format!("atmost({m}) at {x}: {at_most}, count {k}"));
                    partition.check(union == at_most + more, || format!("union != atmost({m}) + morethan({m}) at {x}"));
                    exact_sum += e;
                }
            }
            partition.check(union == exact_sum, || format!("union != sum of exactly(m) at {x}"));
            let slow = oracle.union(&c, x, &mut TermCounter::default()).expect("n within cap");
            oracle_eq.check(union == slow, || format!("union {union} != expansion {slow} at {x}, n = {n}"));
            let full = Slice::Union.eval(&c, x).expect("union needs no threshold");
            oracle_eq.check(full == union, || format!("Slice::Union disagrees at {x}"));
        }
    }
    vec![slices, partition, epsilon, oracle_eq]
}

/// Every suite, in the order `layerset check` prints them.
pub fn run_all(bfn: BFn, seed: u64) -> Vec<SuiteResult> {
    let mut out = vec![
        piecewise(bfn, seed),
        splitting(bfn, seed.wrapping_add(1)),
        kronecker(bfn),
        integer_table(bfn),
        border_tables(),
    ];
    out.extend(layers(seed.wrapping_add(2), 40));
    out
}

/// The production B on rationals.
pub fn production_b(x: Q, y: Q) -> HalfInt {
    bcore::b(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_set_hits_zero_arguments() {
        let t = degenerate_triples();
        assert!(t.len() > 100);
        assert!(t.contains(&(q(0, 1), q(0, 1), q(0, 1))));
    }

    #[test]
    fn small_suites_pass() {
        assert!(kronecker(production_b).passed());
        assert!(integer_table(production_b).passed());
        assert!(border_tables().passed());
        for r in layers(11, 3) {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn expected_variant_tables() {
        assert_eq!(variant_expected("B-+", q(1, 1), q(1, 1)), HalfInt::ONE);
        assert_eq!(variant_expected("B-+", q(-1, 1), q(1, 1)), HalfInt::ZERO);
        assert_eq!(variant_expected("B-+", q(-1, 1), q(-1, 1)), HalfInt::NEG_ONE);
        assert_eq!(variant_expected("B+-", q(-1, 1), q(-1, 1)), HalfInt::ZERO);
        assert_eq!(variant_expected("B++", q(0, 1), q(0, 1)), HalfInt::ZERO);
    }

    #[test]
    fn report_lines() {
        let mut r = SuiteResult::new("demo");
        r.check(true, || unreachable!());
        assert_eq!(r.to_string(), "PASS demo                   1 cases");
        r.check(false, || "boom".into());
        r.check(false, || "later".into());
        assert!(r.to_string().starts_with("FAIL demo"));
        assert!(r.to_string().ends_with("2 of 3 cases failed; first: boom"));
    }
}

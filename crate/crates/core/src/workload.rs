//! Seeded random collections and probe sets for equivalence suites and
//! benchmarks.
//!
//! Intervals live on the half-integer line, so every evaluation, including
//! those exactly on an endpoint, is exact.

use rand::Rng;

use crate::bcore::{Border, HalfInt};
use crate::indicator::{interval_set, Interval};
use crate::tomography::SetCollection;

/// Endpoints are drawn from `[-SPAN, SPAN]` in steps of 1/2.
pub const SPAN: i64 = 12;

fn half_int<R: Rng>(rng: &mut R, lo_twice: i64, hi_twice: i64) -> HalfInt {
    HalfInt::from_twice(rng.gen_range(lo_twice..=hi_twice))
}

fn border<R: Rng>(rng: &mut R) -> Border {
    if rng.gen_bool(0.5) {
        Border::Open
    } else {
        Border::Closed
    }
}

/// A random interval with half-integer endpoints and random openness.
pub fn random_interval<R: Rng>(rng: &mut R) -> Interval<HalfInt> {
    let lower = half_int(rng, -2 * SPAN, 2 * SPAN - 1);
    let len = HalfInt::from_twice(rng.gen_range(1..=16));
    Interval::new(lower, lower + len, border(rng), border(rng)).expect("positive length")
}

pub fn interval_collection<R: Rng>(rng: &mut R, n: usize) -> SetCollection<HalfInt> {
    (0..n).map(|_| interval_set(random_interval(rng))).collect()
}

/// Random half-integer probes covering the endpoint range and a margin.
pub fn probes<R: Rng>(rng: &mut R, count: usize) -> Vec<HalfInt> {
    (0..count)
        .map(|_| half_int(rng, -2 * SPAN - 4, 2 * SPAN + 20))
        .collect()
}

/// Every half-integer in the probe range.
pub fn probe_grid() -> Vec<HalfInt> {
    (-2 * SPAN - 4..=2 * SPAN + 20).map(HalfInt::from_twice).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_and_well_formed() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let (x, y) = (random_interval(&mut a), random_interval(&mut b));
            assert_eq!(x, y);
            assert!(x.lower() < x.upper());
        }
        assert_eq!(probes(&mut a, 50), probes(&mut b, 50));
        assert_eq!(probe_grid().len(), (4 * SPAN + 25) as usize);
    }
}

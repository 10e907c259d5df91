//! Divisibility and prime counting written as sums of B-functions.
//!
//! `Set(x; Prime) = B(sum_{j=2}^{floor(x/2)} B(d_j(0, x), 1/2), 1/2)` where
//! `d_j(0, x)` is the remainder of `x` modulo `j`. The sieve in [`sieve`] is
//! an independent check on the formula and is not used by it.

use thiserror::Error;

use crate::bcore::{b, HalfInt};
use crate::indicator::Indicator;
use crate::par::{self, Execution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("{what} requires x >= 2 (got {x})")]
    BelowTwo { what: &'static str, x: u64 },
}

fn require_two(what: &'static str, x: u64) -> Result<(), NumError> {
    if x < 2 {
        Err(NumError::BelowTwo { what, x })
    } else {
        Ok(())
    }
}

/// Zeroth digit `d_j(0, x) = x - j floor(x / j)`.
pub fn digit0(j: u64, x: u64) -> Result<u64, NumError> {
    if j == 0 {
        return Err(NumError::ZeroModulus);
    }
    Ok(x - j * (x / j))
}

/// `B(d_j(0, x), 1/2)`: 1 iff `j` divides `x`.
pub fn divides(j: u64, x: u64) -> Result<HalfInt, NumError> {
    let rem = digit0(j, x)?;
    Ok(b(HalfInt::from_int(rem as i64), HalfInt::HALF))
}

fn divisor_sum(x: u64) -> i64 {
    (2..=x / 2)
        .map(|j| divides(j, x).expect("j >= 2").as_int().expect("0/1"))
        .sum()
}

/// Number of divisors of `x` other than 1 and `x`; none exceeds `floor(x/2)`.
pub fn proper_divisor_count(x: u64) -> Result<u64, NumError> {
    require_two("proper_divisor_count", x)?;
    Ok(divisor_sum(x) as u64)
}

/// `B(m - sum_j B(d_j(0, x), 1/2), 1/2)`: 1 iff `x` has exactly `m` proper divisors.
pub fn exactly_m_divisors(x: u64, m: u64) -> Result<HalfInt, NumError> {
    require_two("exactly_m_divisors", x)?;
    Ok(b(HalfInt::from_int(m as i64 - divisor_sum(x)), HalfInt::HALF))
}

pub fn is_prime(x: u64) -> Result<HalfInt, NumError> {
    require_two("is_prime", x).and_then(|_| exactly_m_divisors(x, 0))
}

fn is_prime_unchecked(x: u64) -> i64 {
    b(HalfInt::from_int(divisor_sum(x)), HalfInt::HALF)
        .as_int()
        .expect("0/1")
}

/// `Card(Prime <= n) = sum_{x=2}^{n} Set(x; Prime)`.
pub fn prime_count(n: u64) -> Result<u64, NumError> {
    prime_count_with(n, Execution::default())
}

pub fn prime_count_with(n: u64, exec: Execution) -> Result<u64, NumError> {
    require_two("prime_count", n)?;
    Ok(par::sum_range(exec, 2..n + 1, is_prime_unchecked) as u64)
}

/// `table[k]` is the formula's prime count up to `k`, for `k = 0..=n`
/// (0 below 2).
pub fn prime_count_table(n: u64, exec: Execution) -> Vec<u64> {
    let flags = par::map_range(exec, 0..n as usize + 1, |x| {
        if x < 2 {
            0
        } else {
            is_prime_unchecked(x as u64) as u64
        }
    });
    flags
        .iter()
        .scan(0u64, |acc, f| {
            *acc += f;
            Some(*acc)
        })
        .collect()
}

/// Indicator over the naturals of the multiples of `j`.
pub fn multiples_of(j: u64) -> Result<Indicator<u64>, NumError> {
    digit0(j, 0)?;
    Ok(Indicator::from_membership(format!("divides({j})"), move |&x| {
        divides(j, x).expect("j >= 1")
    }))
}

/// Sieve of Eratosthenes.
pub mod sieve {
    /// `flags[x]` is true iff `x` is prime, for `x = 0..=n`.
    pub fn primality_flags(n: u64) -> Vec<bool> {
        let n = n as usize;
        let mut flags = vec![true; n + 1];
        for f in flags.iter_mut().take(2) {
            *f = false;
        }
        let mut p = 2;
        while p * p <= n {
            if flags[p] {
                for q in (p * p..=n).step_by(p) {
                    flags[q] = false;
                }
            }
            p += 1;
        }
        flags
    }

    pub fn prime_count(n: u64) -> u64 {
        primality_flags(n).iter().filter(|&&f| f).count() as u64
    }

    /// `table[k]` is the number of primes up to `k`.
    pub fn prime_count_table(n: u64) -> Vec<u64> {
        primality_flags(n)
            .iter()
            .scan(0u64, |acc, &f| {
                *acc += f as u64;
                Some(*acc)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit0_examples() {
        assert_eq!(digit0(3, 7), Ok(1));
        assert_eq!(digit0(5, 10), Ok(0));
        assert_eq!(digit0(7, 3), Ok(3));
        assert_eq!(digit0(0, 3), Err(NumError::ZeroModulus));
    }

    #[test]
    fn divides_examples() {
        assert_eq!(divides(3, 9), Ok(HalfInt::ONE));
        assert_eq!(divides(4, 9), Ok(HalfInt::ZERO));
        assert_eq!(divides(1, 0), Ok(HalfInt::ONE));
        assert!(divides(0, 9).is_err());
    }

    #[test]
    fn divisor_count_examples() {
        assert_eq!(proper_divisor_count(12), Ok(4));
        assert_eq!(proper_divisor_count(7), Ok(0));
        assert_eq!(proper_divisor_count(4), Ok(1));
        assert!(proper_divisor_count(1).is_err());
        assert!(proper_divisor_count(0).is_err());
    }

    #[test]
    fn exactly_m_divisor_examples() {
        assert_eq!(exactly_m_divisors(12, 4), Ok(HalfInt::ONE));
        assert_eq!(exactly_m_divisors(12, 3), Ok(HalfInt::ZERO));
        assert_eq!(exactly_m_divisors(7, 0), Ok(HalfInt::ONE));
        assert!(exactly_m_divisors(1, 0).is_err());
    }

    #[test]
    fn primality_examples() {
        assert_eq!(is_prime(7), Ok(HalfInt::ONE));
        assert_eq!(is_prime(4), Ok(HalfInt::ZERO));
        assert_eq!(is_prime(2), Ok(HalfInt::ONE));
        assert_eq!(is_prime(3), Ok(HalfInt::ONE));
        assert!(is_prime(1).is_err());
        assert!(is_prime(0).is_err());
    }

    #[test]
    fn prime_count_examples() {
        assert_eq!(sieve::prime_count(10), 4);
        assert_eq!(sieve::prime_count(100), 25);
        assert_eq!(sieve::prime_count(2), 1);
        assert_eq!(prime_count(10), Ok(4));
        assert_eq!(prime_count(100), Ok(25));
        assert_eq!(prime_count(2), Ok(1));
        assert!(prime_count(1).is_err());
        assert_eq!(prime_count_with(1000, Execution::Sequential), Ok(168));
    }

    #[test]
    fn divisor_count_vs_trial_division() {
        for x in 2..=5000u64 {
            let trial = (2..x).filter(|j| x % j == 0).count() as u64;
            assert_eq!(proper_divisor_count(x), Ok(trial), "x = {x}");
        }
    }

    #[test]
    fn one_divisor_count_per_x() {
        for x in 2..=1000u64 {
            let upper = (x / 2).saturating_sub(1);
            let total: HalfInt = (0..=upper).map(|m| exactly_m_divisors(x, m).unwrap()).sum();
            assert_eq!(total, HalfInt::ONE, "x = {x}");
        }
    }

    #[test]
    fn digit0_and_divides_agree() {
        for j in 1..=200u64 {
            for x in 0..=200u64 {
                assert_eq!(divides(j, x).unwrap() == HalfInt::ONE, digit0(j, x).unwrap() == 0);
            }
        }
    }

    #[test]
    fn tables_agree() {
        let formula = prime_count_table(2000, Execution::default());
        assert_eq!(formula, sieve::prime_count_table(2000));
        assert_eq!(formula, prime_count_table(2000, Execution::Sequential));
    }

    #[test]
    fn multiples_indicator() {
        let three = multiples_of(3).unwrap();
        assert_eq!(three.label(), "divides(3)");
        assert!(three.contains(&9));
        assert!(!three.contains(&10));
        assert!(multiples_of(0).is_err());
    }
}

//! Membership layers of a collection of sets.
//!
//! The integer field `k(x) = sum_j Set(x; S_j)` counts how many members of a
//! collection contain `x`. A single B-function evaluation on `k(x)` cuts this
//! field into `{0, 1}`-valued layers:
//!
//! | layer            | expression                        |
//! |------------------|-----------------------------------|
//! | exactly `m`      | `B(m - k, 1/2)`                   |
//! | `1..=m`          | `B(m + 1 - 2k, m)`                |
//! | more than `m`    | `B(n + m + 1 - 2k, n - m)`        |
//! | union            | `B(n + 1 - 2k, n)`                |
//!
//! Each layer costs exactly `n` member evaluations.

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::bcore::{b, HalfInt};
use crate::indicator::Indicator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TomographyError {
    #[error("{query}: threshold m = {m} outside {min}..={max}")]
    ThresholdOutOfRange {
        query: &'static str,
        m: i64,
        min: i64,
        max: i64,
    },
    #[error("epsilon {0} outside (0, 1/2]")]
    InvalidEpsilon(Ratio<i64>),
}

/// An ordered, immutable list of indicators over one universe.
pub struct SetCollection<E> {
    members: Vec<Indicator<E>>,
}

impl<E> Clone for SetCollection<E> {
    fn clone(&self) -> Self {
        SetCollection { members: self.members.clone() }
    }
}

impl<E> fmt::Debug for SetCollection<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.members.iter().map(Indicator::label)).finish()
    }
}

impl<E> Default for SetCollection<E> {
    fn default() -> Self {
        SetCollection { members: Vec::new() }
    }
}

impl<E> FromIterator<Indicator<E>> for SetCollection<E> {
    fn from_iter<I: IntoIterator<Item = Indicator<E>>>(iter: I) -> Self {
        SetCollection { members: iter.into_iter().collect() }
    }
}

impl<E> SetCollection<E> {
    pub fn new(members: Vec<Indicator<E>>) -> Self {
        SetCollection { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Indicator<E>] {
        &self.members
    }
}

/// Number of members containing a probed element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MembershipCount(pub u32);

impl MembershipCount {
    pub fn get(self) -> i64 {
        i64::from(self.0)
    }
}

impl fmt::Display for MembershipCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A layer of the membership-count field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slice {
    Exactly(i64),
    AtMost(i64),
    MoreThan(i64),
    Union,
}

impl Slice {
    pub fn name(self) -> &'static str {
        match self {
            Slice::Exactly(_) => "exactly",
            Slice::AtMost(_) => "atmost",
            Slice::MoreThan(_) => "morethan",
            Slice::Union => "union",
        }
    }

    /// Checks the threshold against a collection of `n` sets.
    pub fn validate(self, n: usize) -> Result<(), TomographyError> {
        let n = n as i64;
        let (m, min) = match self {
            Slice::Exactly(m) | Slice::MoreThan(m) => (m, 0),
            // m = 0 is the degenerate always-zero layer; use `not_in_any`.
            Slice::AtMost(m) => (m, 1),
            Slice::Union => return Ok(()),
        };
        if m < min || m > n {
            return Err(TomographyError::ThresholdOutOfRange {
                query: self.name(),
                m,
                min,
                max: n,
            });
        }
        Ok(())
    }

    /// Evaluates the layer for a collection of `n` sets given the membership
    /// count `k`. The threshold must already be valid for `n`.
    pub fn from_count(self, n: usize, k: MembershipCount) -> HalfInt {
        let (n, k) = (n as i64, k.get());
        match self {
            Slice::Exactly(m) => b(HalfInt::from_int(m - k), HalfInt::HALF),
            Slice::AtMost(m) => b(m + 1 - 2 * k, m),
            Slice::MoreThan(m) => b(n + m + 1 - 2 * k, n - m),
            Slice::Union => b(n + 1 - 2 * k, n),
        }
    }

    pub fn eval<E>(self, c: &SetCollection<E>, x: &E) -> Result<HalfInt, TomographyError> {
        self.validate(c.len())?;
        Ok(self.from_count(c.len(), count(c, x)))
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Slice::Exactly(m) | Slice::AtMost(m) | Slice::MoreThan(m) => {
                write!(f, "{}({m})", self.name())
            }
            Slice::Union => f.write_str("union"),
        }
    }
}

/// Exact sum of the member memberships at `x`.
pub fn count<E>(c: &SetCollection<E>, x: &E) -> MembershipCount {
    let total: HalfInt = c.members.iter().map(|s| s.eval(x)).sum();
    let k = total.as_int().expect("indicator values are integers");
    MembershipCount(k as u32)
}

/// 1 iff `x` belongs to exactly `m` members, `0 <= m <= n`.
pub fn exactly_m<E>(c: &SetCollection<E>, m: i64, x: &E) -> Result<HalfInt, TomographyError> {
    Slice::Exactly(m).eval(c, x)
}

/// `B(m - k, eps)` for an arbitrary `eps` in `(0, 1/2]`; the result does not
/// depend on `eps`. Production paths use [`exactly_m`] (`eps = 1/2`).
pub fn exactly_m_with_epsilon<E>(
    c: &SetCollection<E>,
    m: i64,
    x: &E,
    eps: Ratio<i64>,
) -> Result<HalfInt, TomographyError> {
    if eps <= Ratio::from_integer(0) || eps > Ratio::new(1, 2) {
        return Err(TomographyError::InvalidEpsilon(eps));
    }
    Slice::Exactly(m).validate(c.len())?;
    let k = count(c, x).get();
    Ok(b(Ratio::from_integer(m - k), eps))
}

/// 1 iff `1 <= k(x) <= m`, `1 <= m <= n`.
pub fn at_most_m<E>(c: &SetCollection<E>, m: i64, x: &E) -> Result<HalfInt, TomographyError> {
    Slice::AtMost(m).eval(c, x)
}

/// 1 iff `k(x) > m`, `0 <= m <= n`.
pub fn more_than_m<E>(c: &SetCollection<E>, m: i64, x: &E) -> Result<HalfInt, TomographyError> {
    Slice::MoreThan(m).eval(c, x)
}

/// Characteristic function of the union, `B(n + 1 - 2k, n)`.
pub fn union<E>(c: &SetCollection<E>, x: &E) -> HalfInt {
    Slice::Union.from_count(c.len(), count(c, x))
}

/// 1 iff `x` lies in no member.
pub fn not_in_any<E>(c: &SetCollection<E>, x: &E) -> HalfInt {
    HalfInt::ONE - union(c, x)
}

/// Running arguments of the union's B-function while sets are joined one at
/// a time. Starts at `B(1, 0)`, the empty set; each joined set `A` adds
/// `1 - 2 Set(x; A)` to the first argument and 1 to the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnionAccumulator {
    pub offset: i64,
    pub thickness: i64,
}

impl Default for UnionAccumulator {
    fn default() -> Self {
        UnionAccumulator { offset: 1, thickness: 0 }
    }
}

impl UnionAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Joins a set given its membership value at the probe.
    pub fn join(self, membership: HalfInt) -> Self {
        let s = membership.as_int().expect("membership is 0 or 1");
        UnionAccumulator {
            offset: self.offset + 1 - 2 * s,
            thickness: self.thickness + 1,
        }
    }

    pub fn extend<E>(self, s: &Indicator<E>, x: &E) -> Self {
        self.join(s.eval(x))
    }

    pub fn value(self) -> HalfInt {
        b(self.offset, self.thickness)
    }
}

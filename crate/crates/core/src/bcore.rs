//! The rectangular B-function and its border variants.
//!
//! `B(x, y) = (sign(x + y) - sign(x - y)) / 2` is a box of half-width `|y|`
//! centred on the origin whose height is `sign(y)`, taking `sign(y)/2` on the
//! border. Every output lies in `{-1, -1/2, 0, 1/2, 1}` and is returned as an
//! exact [`HalfInt`].
//!
//! Arguments are any [`Scalar`]: machine integers, exact half-integers,
//! exact rationals, or finite floats wrapped in [`Real`]. All comparisons
//! reduce to sign tests, so integer and rational inputs give exact results.
//! Float inputs are exact everywhere except on the measure-zero borders,
//! where rounding of `x +- y` may move a point across the border.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BError {
    #[error("non-finite real value {0}")]
    NonFinite(f64),
    #[error("interval bounds must satisfy lower < upper (got {lower} .. {upper})")]
    EmptyInterval { lower: String, upper: String },
}

/// An exact multiple of one half, stored as its doubled integer value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const NEG_ONE: HalfInt = HalfInt { twice: -2 };
    pub const NEG_HALF: HalfInt = HalfInt { twice: -1 };
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInt { twice: 2 * value }
    }

    /// The value multiplied by two.
    pub const fn twice_value(self) -> i64 {
        self.twice
    }

    /// `Some(v)` when the value is a whole number.
    pub const fn as_int(self) -> Option<i64> {
        if self.twice % 2 == 0 {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub const fn is_zero(self) -> bool {
        self.twice == 0
    }

    pub fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    pub fn double(self) -> Self {
        HalfInt { twice: 2 * self.twice }
    }

    /// Product, when it is again a multiple of one half.
    pub fn checked_mul(self, rhs: HalfInt) -> Option<HalfInt> {
        let quad = self.twice.checked_mul(rhs.twice)?;
        (quad % 2 == 0).then_some(HalfInt { twice: quad / 2 })
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfInt({self})")
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_int() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.twice += rhs.twice;
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl Mul for HalfInt {
    type Output = HalfInt;

    /// Panics if the product is not a multiple of one half (e.g. `1/2 * 1/2`).
    fn mul(self, rhs: HalfInt) -> HalfInt {
        self.checked_mul(rhs)
            .unwrap_or_else(|| panic!("{self} * {rhs} is not a half-integer"))
    }
}

impl std::iter::Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        iter.fold(HalfInt::ZERO, Add::add)
    }
}

impl From<i64> for HalfInt {
    fn from(v: i64) -> Self {
        HalfInt::from_int(v)
    }
}

/// A finite real number. Construction rejects NaN and infinities.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Real(f64);

impl Real {
    pub fn new(value: f64) -> Result<Real, BError> {
        if value.is_finite() {
            Ok(Real(value))
        } else {
            Err(BError::NonFinite(value))
        }
    }

    pub const fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Real {
    type Error = BError;
    fn try_from(value: f64) -> Result<Self, BError> {
        Real::new(value)
    }
}

impl From<i32> for Real {
    fn from(v: i32) -> Self {
        Real(f64::from(v))
    }
}

impl From<HalfInt> for Real {
    fn from(v: HalfInt) -> Self {
        Real(v.to_f64())
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! real_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                let out = self.0 $op rhs.0;
                debug_assert!(out.is_finite(), "Real overflow: {} {} {}", self.0, stringify!($op), rhs.0);
                Real(out)
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

/// Totally ordered, finite values accepted by the B-function family.
pub trait Scalar:
    Copy + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;

    fn abs_value(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
}

impl Scalar for HalfInt {
    fn zero() -> Self {
        HalfInt::ZERO
    }
}

impl Scalar for Real {
    fn zero() -> Self {
        Real(0.0)
    }
}

impl Scalar for Ratio<i64> {
    fn zero() -> Self {
        Ratio::from_integer(0)
    }
}

/// `sign(0) = 0`.
pub fn sign<T: Scalar>(x: T) -> HalfInt {
    match x.partial_cmp(&T::zero()) {
        Some(Ordering::Greater) => HalfInt::ONE,
        Some(Ordering::Less) => HalfInt::NEG_ONE,
        Some(Ordering::Equal) => HalfInt::ZERO,
        None => unreachable!("Scalar values are totally ordered"),
    }
}

/// The B-function via its sign formula.
pub fn b<T: Scalar>(x: T, y: T) -> HalfInt {
    HalfInt::from_twice((sign(x + y).twice_value() - sign(x - y).twice_value()) / 2)
}

/// The B-function via its three-case table. Agrees with [`b`] everywhere.
pub fn b_cases<T: Scalar>(x: T, y: T) -> HalfInt {
    let (ax, ay) = (x.abs_value(), y.abs_value());
    if ax < ay {
        sign(y)
    } else if ax == ay && y != T::zero() {
        HalfInt::from_twice(sign(y).twice_value() / 2)
    } else {
        HalfInt::ZERO
    }
}

/// Kronecker delta on integers, `B(m - n, 1/2)`.
pub fn b_kronecker(m: i64, n: i64) -> HalfInt {
    if m == n {
        HalfInt::ONE
    } else {
        HalfInt::ZERO
    }
}

/// Closed-closed variant: `B(0, B(x, y))`, equal to `sign(y)` on `[-|y|, |y|]`.
pub fn b_pp<T: Scalar>(x: T, y: T) -> HalfInt {
    b(HalfInt::ZERO, b(x, y))
}

/// Open-open variant: `2B(x, y) - B++(x, y)`, zero on the border.
pub fn b_mm<T: Scalar>(x: T, y: T) -> HalfInt {
    b(x, y).double() - b_pp(x, y)
}

/// Open-closed variant: `B(0, |x + y| B(x, y))`. The left border `x = -y` is
/// excluded, the right border `x = y` included.
pub fn b_mp<T: Scalar>(x: T, y: T) -> HalfInt {
    // B(0, w) = sign(w), so |x + y| only contributes its sign.
    b(HalfInt::ZERO, sign((x + y).abs_value()) * b(x, y))
}

/// Closed-open variant: `B(0, |x - y| B(x, y))`.
pub fn b_pm<T: Scalar>(x: T, y: T) -> HalfInt {
    b(HalfInt::ZERO, sign((x - y).abs_value()) * b(x, y))
}

/// Whether an interval endpoint belongs to the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Border {
    Open,
    Closed,
}

/// The variant of `B` whose support has the requested left and right borders.
pub fn b_variant<T: Scalar>(left: Border, right: Border) -> fn(T, T) -> HalfInt {
    match (left, right) {
        (Border::Closed, Border::Closed) => b_pp::<T>,
        (Border::Open, Border::Open) => b_mm::<T>,
        (Border::Open, Border::Closed) => b_mp::<T>,
        (Border::Closed, Border::Open) => b_pm::<T>,
    }
}

/// `B(x - (q + r)/2, (q - r)/2)`: 1 strictly inside `(r, q)`, 1/2 on the
/// endpoints and 0 outside.
///
/// Evaluated as `B(2x - q - r, q - r)`; `B(cx, cy) = B(x, y)` for `c > 0`,
/// which keeps integer arguments exact.
pub fn interval_identity<T: Scalar + fmt::Debug>(x: T, r: T, q: T) -> Result<HalfInt, BError> {
    if r >= q {
        return Err(BError::EmptyInterval {
            lower: format!("{r:?}"),
            upper: format!("{q:?}"),
        });
    }
    Ok(b(x + x - q - r, q - r))
}

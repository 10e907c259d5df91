//! Characteristic functions over a typed universe.
//!
//! An [`Indicator<E>`] maps every element of the universe `E` to 0 or 1.
//! Primitives are built from the border variants of the B-function; the
//! combinators (product, complement) keep values inside `{0, 1}`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::bcore::{b, b_mm, b_pp, b_variant, Border, HalfInt, Real, Scalar};

/// A point of the plane.
pub type Point = (Real, Real);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndicatorError {
    #[error("invalid interval: lower bound {lower} must be below upper bound {upper}")]
    InvalidInterval { lower: String, upper: String },
    #[error("invalid disk radius {0}: must be positive")]
    InvalidRadius(f64),
}

type EvalFn<E> = dyn Fn(&E) -> HalfInt + Send + Sync;

/// A pure, total map from `E` into `{0, 1}`.
pub struct Indicator<E> {
    label: Arc<str>,
    eval: Arc<EvalFn<E>>,
}

impl<E> Clone for Indicator<E> {
    fn clone(&self) -> Self {
        Indicator {
            label: Arc::clone(&self.label),
            eval: Arc::clone(&self.eval),
        }
    }
}

impl<E> fmt::Debug for Indicator<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Indicator").field(&self.label).finish()
    }
}

impl<E> Indicator<E> {
    pub fn from_predicate<F>(label: impl Into<Arc<str>>, pred: F) -> Self
    where
        F: Fn(&E) -> bool + Send + Sync + 'static,
    {
        Indicator {
            label: label.into(),
            eval: Arc::new(move |x| if pred(x) { HalfInt::ONE } else { HalfInt::ZERO }),
        }
    }

    /// Wraps a function already known to return only 0 or 1.
    pub(crate) fn from_membership<F>(label: impl Into<Arc<str>>, f: F) -> Self
    where
        F: Fn(&E) -> HalfInt + Send + Sync + 'static,
    {
        Indicator {
            label: label.into(),
            eval: Arc::new(f),
        }
    }

    pub fn eval(&self, x: &E) -> HalfInt {
        let v = (self.eval)(x);
        debug_assert!(
            v == HalfInt::ZERO || v == HalfInt::ONE,
            "indicator {} produced {v}",
            self.label
        );
        v
    }

    pub fn contains(&self, x: &E) -> bool {
        self.eval(x) == HalfInt::ONE
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(self, label: impl Into<Arc<str>>) -> Self {
        Indicator {
            label: label.into(),
            eval: self.eval,
        }
    }
}

/// `Set(x; U) = 1`.
pub fn universe<E>() -> Indicator<E> {
    Indicator::from_membership("U", |_| HalfInt::ONE)
}

/// `Set(x; {}) = B(1, 0) = 0`.
pub fn empty<E>() -> Indicator<E> {
    Indicator::from_membership("{}", |_| b(1i64, 0))
}

/// Pointwise product.
pub fn intersect<E: 'static>(a: &Indicator<E>, b: &Indicator<E>) -> Indicator<E> {
    let label = format!("inter({}, {})", a.label, b.label);
    let (a, b) = (a.clone(), b.clone());
    Indicator::from_membership(label, move |x| a.eval(x) * b.eval(x))
}

/// Product over any number of indicators. The empty product is the universe.
pub fn intersect_all<E: 'static>(members: &[Indicator<E>]) -> Indicator<E> {
    if members.is_empty() {
        return universe();
    }
    let label = format!(
        "inter({})",
        members.iter().map(Indicator::label).collect::<Vec<_>>().join(", ")
    );
    let members = members.to_vec();
    Indicator::from_membership(label, move |x| {
        members.iter().fold(HalfInt::ONE, |acc, m| acc * m.eval(x))
    })
}

/// Pointwise `1 - a(x)`.
pub fn complement<E: 'static>(a: &Indicator<E>) -> Indicator<E> {
    let label = format!("not({})", a.label);
    let a = a.clone();
    Indicator::from_membership(label, move |x| HalfInt::ONE - a.eval(x))
}

/// A bounded interval with independently open or closed endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    lower: T,
    upper: T,
    left: Border,
    right: Border,
}

impl<T: Scalar + fmt::Debug> Interval<T> {
    pub fn new(lower: T, upper: T, left: Border, right: Border) -> Result<Self, IndicatorError> {
        if lower >= upper {
            return Err(IndicatorError::InvalidInterval {
                lower: format!("{lower:?}"),
                upper: format!("{upper:?}"),
            });
        }
        Ok(Interval { lower, upper, left, right })
    }

    pub fn closed(lower: T, upper: T) -> Result<Self, IndicatorError> {
        Self::new(lower, upper, Border::Closed, Border::Closed)
    }

    pub fn open(lower: T, upper: T) -> Result<Self, IndicatorError> {
        Self::new(lower, upper, Border::Open, Border::Open)
    }

    pub fn lower(&self) -> T {
        self.lower
    }

    pub fn upper(&self) -> T {
        self.upper
    }

    pub fn borders(&self) -> (Border, Border) {
        (self.left, self.right)
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.left == Border::Closed { '[' } else { '(' };
        let close = if self.right == Border::Closed { ']' } else { ')' };
        write!(f, "{open}{}, {}{close}", self.lower, self.upper)
    }
}

/// Characteristic function of an interval, `B**(x - (b+a)/2, (b-a)/2)` with
/// the border variant chosen by the endpoint openness.
pub fn interval_set<T>(iv: Interval<T>) -> Indicator<T>
where
    T: Scalar + fmt::Display + Send + Sync + 'static,
{
    let variant = b_variant::<T>(iv.left, iv.right);
    let (lo, hi) = (iv.lower, iv.upper);
    // Scaled by 2 so that integer endpoints need no division.
    Indicator::from_membership(iv.to_string(), move |&x| variant(x + x - hi - lo, hi - lo))
}

/// A disk in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    center: Point,
    radius: Real,
    boundary: Border,
}

impl Disk {
    pub fn new(cx: Real, cy: Real, radius: Real, boundary: Border) -> Result<Self, IndicatorError> {
        if radius.get() <= 0.0 {
            return Err(IndicatorError::InvalidRadius(radius.get()));
        }
        Ok(Disk { center: (cx, cy), radius, boundary })
    }

    pub fn open(cx: f64, cy: f64, radius: f64) -> Result<Self, IndicatorError> {
        let real = |v: f64| Real::new(v).map_err(|_| IndicatorError::InvalidRadius(v));
        Disk::new(real(cx)?, real(cy)?, real(radius)?, Border::Open)
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn radius(&self) -> Real {
        self.radius
    }

    pub fn boundary(&self) -> Border {
        self.boundary
    }
}

impl fmt::Display for Disk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.boundary {
            Border::Open => "open",
            Border::Closed => "closed",
        };
        write!(f, "disk({}, {}, {}, {kind})", self.center.0, self.center.1, self.radius)
    }
}

/// `B--((x-cx)^2 + (y-cy)^2, r^2)` for an open disk, `B++` for a closed one.
pub fn disk_set(d: Disk) -> Indicator<Point> {
    let (cx, cy) = d.center;
    let r2 = d.radius * d.radius;
    let variant: fn(Real, Real) -> HalfInt = match d.boundary {
        Border::Open => b_mm::<Real>,
        Border::Closed => b_pp::<Real>,
    };
    Indicator::from_membership(d.to_string(), move |&(x, y): &Point| {
        let (dx, dy) = (x - cx, y - cy);
        variant(dx * dx + dy * dy, r2)
    })
}

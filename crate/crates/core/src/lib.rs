//! Set algebra through the sign-based B-function.
//!
//! Characteristic functions of unions, intersections and complements are
//! built from `B(x, y) = (sign(x + y) - sign(x - y)) / 2`, which makes the
//! union of `n` sets an `n`-term expression instead of the `2^n - 1` terms of
//! inclusion-exclusion. The membership count of a collection is sliced into
//! exactly-`m`, at-most-`m` and more-than-`m` layers.
//!
//! ```
//! use layerset::bcore::{b, HalfInt};
//! use layerset::indicator::{disk_set, Disk};
//! use layerset::tomography::{self, SetCollection};
//! use layerset::bcore::Real;
//!
//! assert_eq!(b(1i64, 2), HalfInt::ONE);
//! assert_eq!(b(2i64, 2), HalfInt::HALF);
//!
//! let c: SetCollection<_> = [(1.0, 0.0, 1.5), (-1.0, 0.0, 2.0)]
//!     .iter()
//!     .map(|&(x, y, r)| disk_set(Disk::open(x, y, r).unwrap()))
//!     .collect();
//! let origin = (Real::from(0), Real::from(0));
//! assert_eq!(tomography::count(&c, &origin).get(), 2);
//! assert_eq!(tomography::exactly_m(&c, 2, &origin).unwrap(), HalfInt::ONE);
//! ```

pub mod bcore;
pub mod bench;
pub mod indicator;
pub mod numtheory;
pub mod par;
pub mod raster;
pub mod selfcheck;
pub mod setlang;
pub mod tomography;
pub mod whitney;
pub mod workload;

pub use bcore::{b, sign, BError, Border, HalfInt, Real};
pub use indicator::{Indicator, Point};
pub use par::Execution;
pub use tomography::{SetCollection, Slice};

//! Exact scalars, univariate polynomials and small dense linear algebra.
//!
//! Everything downstream is written against the [`Scalar`] trait so that the
//! same formulas can be evaluated over `BigRational` (the default, see the
//! aliases in the crate root), machine rationals or floats.

mod linalg;
mod poly;
mod ratfunc;

pub use linalg::{Field, Matrix};
pub use poly::{poly_order, UniPoly};
pub use ratfunc::RatFunc;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed};

use crate::error::{Error, Result};

/// Ordered ring-with-division scalar used by the generic formulas.
pub trait Scalar: Num + Signed + Clone + PartialOrd + Debug {}

impl<T> Scalar for T where T: Num + Signed + Clone + PartialOrd + Debug {}

/// Parse `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise, `q > 0`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Shorthand for `p/q` as a `BigRational`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

//! Exact scalar fields.
//!
//! Everything in this crate that does linear algebra or cyclotomic
//! arithmetic is generic over [`ExactField`]. The crate root fixes the
//! default instantiation to arbitrary-precision rationals; `Ratio<i64>`
//! is available for small inputs where overflow is not a concern.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, ToPrimitive};

/// A field with exact equality and a total order on its elements.
///
/// The order is only used to make canonical choices (sorting rows of a
/// character table, for instance); it carries no algebraic meaning.
pub trait ExactField:
    Num + Neg<Output = Self> + Clone + Eq + Ord + Debug + Display + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// The value as a machine integer, if it is one.
    fn as_integer(&self) -> Option<i64>;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl ExactField for Ratio<BigInt> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(BigInt::from(n))
    }

    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

impl ExactField for Ratio<i64> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n)
    }

    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            Some(*self.numer())
        } else {
            None
        }
    }
}

/// Renders a scalar as `p` or `p/q`.
pub fn render<T: ExactField>(x: &T) -> String {
    x.to_string()
}

/// Parses `p` or `p/q` into any exact field.
pub fn parse<T: ExactField>(s: &str) -> Option<T> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(T::from_ratio(n, d))
        }
        None => s.parse::<i64>().ok().map(T::from_int),
    }
}

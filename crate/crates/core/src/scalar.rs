//! Ground field abstraction.
//!
//! Every algorithm in this crate decides equalities exactly, so the scalar
//! type must be an exact field. `Ratio<i64>`, `Ratio<i128>` and
//! `BigRational` all qualify; the fixed-width ratios can overflow on large
//! inputs, which is why the crate-root aliases use `BigRational`.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// An exact field with a canonical textual form (`"p/q"`, or `"p"` when the
/// denominator is one).
pub trait Scalar:
    Clone + PartialEq + Eq + Debug + Display + FromStr + Num + Signed + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }

    /// Parses the canonical textual form. Zero denominators and anything
    /// that is not `p` or `p/q` with integer `p`, `q` are rejected.
    fn parse_exact(s: &str) -> Option<Self> {
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (t, None),
        };
        let is_int = |x: &str| {
            let x = x.strip_prefix('-').unwrap_or(x);
            !x.is_empty() && x.chars().all(|c| c.is_ascii_digit())
        };
        if !is_int(num) {
            return None;
        }
        if let Some(d) = den {
            if !is_int(d) || d.trim_start_matches('-').chars().all(|c| c == '0') {
                return None;
            }
        }
        t.parse().ok()
    }
}

macro_rules! impl_ratio_scalar {
    ($($int:ty),*) => {$(
        impl Scalar for Ratio<$int> {
            fn from_i64(v: i64) -> Self {
                Ratio::from_integer(<$int>::from(v))
            }
        }
    )*};
}

impl_ratio_scalar!(i64, i128);

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }
}

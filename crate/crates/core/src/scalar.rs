//! Scalar abstraction for the exact core.
//!
//! All curve and construction code is generic over [`Scalar`], a field-like
//! type built from `num-traits` bounds plus the two operations the
//! constructions genuinely need beyond field arithmetic: embedding small
//! integers and taking exact square roots. The one production instantiation
//! is [`crate::Rat`] (arbitrary-precision rationals); everything downstream
//! of the exact core (pipeline, heights, records) works with that alias.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, Signed};
use std::fmt;

use crate::error::{Error, Result};
use crate::Rat;

/// Field-like scalar with exact arithmetic.
pub trait Scalar: Num + Signed + Clone + PartialEq + fmt::Debug + fmt::Display {
    /// Embed a small integer.
    fn from_int(n: i64) -> Self;

    /// Exact non-negative square root, if `self` is a perfect square.
    ///
    /// Returns `None` when `self` is non-negative but not a square of a
    /// scalar, and also for negative inputs (callers that must distinguish
    /// the negative case check the sign first).
    fn exact_sqrt(&self) -> Option<Self>;
}

impl Scalar for Rat {
    fn from_int(n: i64) -> Self {
        Rat::from(BigInt::from(n))
    }

    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let ns = int_sqrt_exact(self.numer())?;
        let ds = int_sqrt_exact(self.denom())?;
        Some(Rat::new(ns, ds))
    }
}

/// Exact square root of a non-negative integer, if it is a perfect square.
fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    if &r.clone() * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact rational square root.
///
/// Returns `Ok(Some(s))` with `s >= 0` and `s^2 = r` when both numerator and
/// denominator are perfect squares, `Ok(None)` when `r >= 0` is not a
/// rational square, and a domain error for negative input.
pub fn rat_sqrt(r: &Rat) -> Result<Option<Rat>> {
    if r.is_negative() {
        return Err(Error::Domain);
    }
    Ok(r.exact_sqrt())
}

/// Number of decimal digits of the larger of |numerator| and denominator.
///
/// This is the size measure used by the pipeline's digit guard.
pub fn digit_size(r: &Rat) -> usize {
    let n = r.numer().abs().to_string().len();
    let d = r.denom().to_string().len();
    n.max(d)
}

/// Parse a rational from an exact `"n"` or `"n/d"` decimal string.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero_ref() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from(n))
        }
    }
}

/// Render a rational as `"n"` or `"n/d"` (always reduced, denominator > 0).
pub fn format_rat(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

trait IsZeroRef {
    fn is_zero_ref(&self) -> bool;
}

impl IsZeroRef for BigInt {
    fn is_zero_ref(&self) -> bool {
        use num_traits::Zero;
        self.is_zero()
    }
}

/// gcd of the numerators over lcm of denominators; the positive "content" of
/// a set of rationals. Zero entries are ignored; returns zero if all are.
pub fn rational_content(vals: &[Rat]) -> Rat {
    use num_traits::Zero;
    let mut num = BigInt::from(0);
    let mut den = BigInt::from(1);
    for v in vals {
        if v.is_zero() {
            continue;
        }
        num = num.gcd(v.numer());
        den = den.lcm(v.denom());
    }
    if num.is_zero() {
        Rat::zero()
    } else {
        Rat::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    #[test]
    fn sqrt_of_paper_leading_coefficient() {
        // 370881 is the quartic's leading coefficient at t = 1; its root 609
        // is the value of 140 + 246 t + 166 t^2 + 51 t^3 + 6 t^4 there.
        assert_eq!(rat_sqrt(&rat(370_881)).unwrap(), Some(rat(609)));
    }

    #[test]
    fn sqrt_edge_cases() {
        assert_eq!(rat_sqrt(&Rat::zero()).unwrap(), Some(Rat::zero()));
        assert_eq!(rat_sqrt(&rat(2)).unwrap(), None);
        assert_eq!(rat_sqrt(&ratio(4, 9)).unwrap(), Some(ratio(2, 3)));
        assert_eq!(rat_sqrt(&ratio(4, 7)).unwrap(), None);
        assert_eq!(rat_sqrt(&rat(-1)), Err(Error::Domain));
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "1", "-7", "81/40", "-62736289/18852320", "2201/2320"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        // normalizes sign and gcd
        assert_eq!(format_rat(&parse_rat("4/-6").unwrap()), "-2/3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn digit_size_counts_the_larger_side() {
        assert_eq!(digit_size(&ratio(-12345, 7)), 5);
        assert_eq!(digit_size(&ratio(1, 1000)), 4);
        assert_eq!(digit_size(&Rat::one()), 1);
    }

    proptest! {
        #[test]
        fn sqrt_round_trip(n in -1000i64..1000, d in 1i64..1000) {
            let s = ratio(n, d);
            let sq = &s * &s;
            prop_assert_eq!(rat_sqrt(&sq).unwrap(), Some(s.abs()));
        }
    }
}

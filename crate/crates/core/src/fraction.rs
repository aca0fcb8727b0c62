//! Reduced fractions, the vertices of the Farey diagram.
//!
//! A [`Fraction`] is always stored in lowest terms with a non-negative
//! denominator. `1/0` is a legitimate value (the point at infinity, where
//! every edge path starts) and is the only fraction with a zero denominator.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: BigInt,
    den: BigInt,
}

impl Fraction {
    /// Builds the canonical form of `n/d`.
    pub fn new(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let (mut n, mut d) = (n.into(), d.into());
        if d.is_zero() {
            return match n.sign() {
                num_bigint::Sign::NoSign => Err(Error::ZeroOverZero),
                num_bigint::Sign::Minus => Err(Error::NegativeInfinity),
                num_bigint::Sign::Plus => Ok(Self::infinity()),
            };
        }
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if !g.is_one() {
            n /= &g;
            d /= &g;
        }
        Ok(Fraction { num: n, den: d })
    }

    /// Trusted constructor for pairs already known to be reduced.
    pub(crate) fn from_reduced(num: BigInt, den: BigInt) -> Self {
        debug_assert!(!den.is_negative());
        debug_assert!(num.gcd(&den).is_one());
        Fraction { num, den }
    }

    /// Canonical fraction for a primitive integer vector, up to sign.
    pub(crate) fn from_vector(num: BigInt, den: BigInt) -> Self {
        if den.is_negative() || (den.is_zero() && num.is_negative()) {
            Self::from_reduced(-num, -den)
        } else {
            Self::from_reduced(num, den)
        }
    }

    pub fn infinity() -> Self {
        Fraction { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Fraction { num: BigInt::zero(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Fraction { num: BigInt::one(), den: BigInt::one() }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Fraction { num: n.into(), den: BigInt::one() }
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }

    /// Odd denominator: the fraction names a knot.
    pub fn is_knot(&self) -> bool {
        self.den.is_odd()
    }

    /// Even denominator (including `1/0`): the fraction names a two-component link.
    pub fn is_link(&self) -> bool {
        self.den.is_even()
    }

    /// `num(self)·den(other) − num(other)·den(self)`.
    pub fn det(&self, other: &Fraction) -> BigInt {
        &self.num * &other.den - &other.num * &self.den
    }

    pub fn is_farey_neighbor(&self, other: &Fraction) -> bool {
        self.det(other).abs().is_one()
    }

    /// `(a+b)/(c+d)` for Farey neighbors `a/c` and `b/d`.
    pub fn mediant(&self, other: &Fraction) -> Result<Fraction> {
        if !self.is_farey_neighbor(other) {
            return Err(Error::not_neighbors(self.clone(), other.clone()));
        }
        // Neighbors give a unimodular matrix, so the sum is already reduced.
        Ok(Fraction::from_reduced(&self.num + &other.num, &self.den + &other.den))
    }

    /// The two fractions whose mediant is `self`, smaller one first.
    ///
    /// Defined for `0 < self <= 1`; the parents of `1/1` are `0/1` and `1/0`.
    pub fn parents(&self) -> Result<(Fraction, Fraction)> {
        if self.is_infinity() || !self.num.is_positive() || self.num > self.den {
            return Err(Error::OutOfRange { fraction: self.clone(), reason: "parents are defined for 0 < p/q <= 1" });
        }
        if self.den.is_one() {
            return Ok((Fraction::zero(), Fraction::infinity()));
        }
        // The left parent a/c satisfies p·c − a·q = 1 with 0 < c < q.
        let ext = self.num.extended_gcd(&self.den);
        let c = ext.x.mod_floor(&self.den);
        let a = (&self.num * &c - BigInt::one()) / &self.den;
        let b = &self.num - &a;
        let d = &self.den - &c;
        Ok((Fraction::from_reduced(a, c), Fraction::from_reduced(b, d)))
    }

    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.num.to_i64()?, self.den.to_i64()?))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinity() {
            f64::INFINITY
        } else {
            self.num.to_f64().unwrap_or(f64::NAN) / self.den.to_f64().unwrap_or(f64::NAN)
        }
    }

    /// `0 < p/q < 1` with `q >= 2`: the range of fractions naming nontrivial 2-bridge links.
    pub fn check_unit_interior(&self) -> Result<()> {
        if self.is_infinity() || !self.num.is_positive() || self.num >= self.den {
            return Err(Error::OutOfRange { fraction: self.clone(), reason: "expected 0 < p/q < 1" });
        }
        Ok(())
    }

    /// Parses `p/q`, rejecting input that is not already in lowest terms.
    pub fn parse_reduced(s: &str) -> Result<Fraction> {
        let f: Fraction = s.parse()?;
        let (n, d) = s.trim().split_once('/').ok_or_else(|| Error::Parse(s.to_string()))?;
        if n.trim().parse::<BigInt>().ok().as_ref() != Some(&f.num)
            || d.trim().parse::<BigInt>().ok().as_ref() != Some(&f.den)
        {
            return Err(Error::NotReduced(s.trim().to_string()));
        }
        Ok(f)
    }
}

impl Ord for Fraction {
    /// Numeric order with `1/0` above every finite fraction.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// True when `u`, `v`, `w` occur in that cyclic order going up the
/// extended real line, i.e. counter-clockwise around the boundary circle.
/// Equivalently, `w` lies to the left of the directed geodesic `u → v`.
pub fn is_ccw(u: &Fraction, v: &Fraction, w: &Fraction) -> bool {
    (u < v && v < w) || (v < w && w < u) || (w < u && u < v)
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let (n, d) = s.trim().split_once('/').ok_or_else(bad)?;
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        Fraction::new(n, d)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Shorthand for tests and examples: `frac(13, 34)`. Panics on `0/0` or `-1/0`.
pub fn frac(n: i64, d: i64) -> Fraction {
    Fraction::new(n, d).expect("valid fraction literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn construction_normalizes() {
        assert_eq!(frac(26, 68), frac(13, 34));
        assert_eq!(frac(26, 68).to_string(), "13/34");
        assert_eq!(frac(3, 0), Fraction::infinity());
        assert_eq!(frac(-2, -4).to_string(), "1/2");
        assert_eq!(frac(2, -4).to_string(), "-1/2");
        assert_eq!(Fraction::new(0, 0), Err(Error::ZeroOverZero));
        assert_eq!(Fraction::new(-3, 0), Err(Error::NegativeInfinity));
    }

    #[test]
    fn determinants() {
        assert_eq!(frac(0, 1).det(&frac(1, 2)), BigInt::from(-1));
        assert_eq!(frac(1, 1).det(&frac(1, 2)), BigInt::from(1));
        assert_eq!(frac(8, 21).det(&frac(13, 34)), BigInt::from(-1));
    }

    #[test]
    fn neighbors() {
        assert!(frac(1, 0).is_farey_neighbor(&frac(5, 1)));
        assert!(frac(1, 3).is_farey_neighbor(&frac(2, 5)));
        assert!(!frac(1, 2).is_farey_neighbor(&frac(3, 8)));
    }

    #[test]
    fn mediants() {
        assert_eq!(frac(1, 0).mediant(&frac(0, 1)).unwrap(), frac(1, 1));
        assert_eq!(frac(1, 3).mediant(&frac(1, 2)).unwrap(), frac(2, 5));
        assert_eq!(frac(5, 13).mediant(&frac(8, 21)).unwrap(), frac(13, 34));
        assert!(matches!(frac(1, 2).mediant(&frac(3, 8)), Err(Error::NotNeighbors(..))));
    }

    #[test]
    fn parents_of_small_fractions() {
        assert_eq!(frac(1, 2).parents().unwrap(), (frac(0, 1), frac(1, 1)));
        assert_eq!(frac(2, 5).parents().unwrap(), (frac(1, 3), frac(1, 2)));
        assert_eq!(frac(1, 1).parents().unwrap(), (frac(0, 1), frac(1, 0)));
        assert!(frac(0, 1).parents().is_err());
        assert!(frac(1, 0).parents().is_err());
        assert!(frac(3, 2).parents().is_err());
    }

    /// Brute force: the only Farey-neighbor pair with smaller denominators
    /// summing to 13/34.
    #[test]
    fn parents_of_13_34_by_search() {
        let target = frac(13, 34);
        let mut found = Vec::new();
        for c in 1..34i64 {
            for a in 0..=c {
                let (b, d) = (13 - a, 34 - c);
                if b < 0 || d <= 0 || num_integer::gcd(a, c) != 1 || num_integer::gcd(b, d) != 1 {
                    continue;
                }
                let (l, r) = (frac(a, c), frac(b, d));
                if l.is_farey_neighbor(&r) && l < r {
                    found.push((l, r));
                }
            }
        }
        assert_eq!(found, vec![(frac(8, 21), frac(5, 13))]);
        assert_eq!(target.parents().unwrap(), (frac(8, 21), frac(5, 13)));
        assert_ne!(BigInt::from(5).is_even(), BigInt::from(8).is_even());
    }

    #[test]
    fn exhaustive_parents_up_to_500() {
        for q in 2..=500i64 {
            for p in 1..q {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let f = frac(p, q);
                let (l, r) = f.parents().unwrap();
                assert!(l < f && f < r, "{f}: {l} {r}");
                assert!(l.det(&r).abs().is_one());
                assert_eq!(l.mediant(&r).unwrap(), f);
                if q % 2 == 0 {
                    assert_ne!(l.num().is_even(), r.num().is_even(), "{f}");
                    assert!(l.is_knot() && r.is_knot());
                } else {
                    assert_ne!(l.is_knot(), r.is_knot(), "{f}");
                }
            }
        }
    }

    #[test]
    fn ordering_puts_infinity_last() {
        let mut v = vec![frac(1, 0), frac(1, 2), frac(0, 1), frac(-1, 1), frac(2, 1)];
        v.sort();
        assert_eq!(v, vec![frac(-1, 1), frac(0, 1), frac(1, 2), frac(2, 1), frac(1, 0)]);
        assert!(is_ccw(&frac(1, 0), &frac(0, 1), &frac(1, 2)));
        assert!(is_ccw(&frac(0, 1), &frac(1, 2), &frac(1, 1)));
        assert!(!is_ccw(&frac(0, 1), &frac(1, 1), &frac(1, 2)));
    }

    #[test]
    fn parse_and_serialize() {
        assert_eq!("13/34".parse::<Fraction>().unwrap(), frac(13, 34));
        assert_eq!("1/0".parse::<Fraction>().unwrap(), Fraction::infinity());
        assert!("13".parse::<Fraction>().is_err());
        assert!("a/b".parse::<Fraction>().is_err());
        assert_eq!(serde_json::to_string(&frac(3, 8)).unwrap(), "\"3/8\"");
        let back: Fraction = serde_json::from_str("\"1/0\"").unwrap();
        assert!(back.is_infinity());
    }

    #[test]
    fn huge_values_do_not_overflow() {
        let big = "123456789012345678901234567890".parse::<BigInt>().unwrap();
        let f = Fraction::new(big.clone(), &big + 1).unwrap();
        let g = Fraction::new(&big + 1, &big + 2).unwrap();
        assert!(f.is_farey_neighbor(&g));
        assert_eq!(f.det(&g), BigInt::from(-1));
    }

    #[test]
    fn strict_parsing() {
        assert_eq!(Fraction::parse_reduced("7/34").unwrap(), frac(7, 34));
        assert_eq!(Fraction::parse_reduced(" 1/0 ").unwrap(), Fraction::infinity());
        assert!(Fraction::parse_reduced("4/34").is_err());
        assert!(Fraction::parse_reduced("-1/-2").is_err());
        assert!(Fraction::parse_reduced("3/0").is_err());
        assert!(Fraction::parse_reduced("1/2/3").is_err());
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent(n in -10_000i64..10_000, d in 1i64..10_000, k in 1i64..1000) {
            let f = frac(n, d);
            let scaled = Fraction::new(f.num() * k, f.den() * k).unwrap();
            prop_assert_eq!(scaled, f);
        }

        #[test]
        fn det_is_antisymmetric(a in -500i64..500, c in 0i64..500, b in -500i64..500, d in 0i64..500) {
            prop_assume!((a, c) != (0, 0) && (b, d) != (0, 0));
            prop_assume!(c != 0 || a > 0);
            prop_assume!(d != 0 || b > 0);
            let (f, g) = (frac(a, c), frac(b, d));
            prop_assert_eq!(f.det(&g), -g.det(&f));
        }
    }
}

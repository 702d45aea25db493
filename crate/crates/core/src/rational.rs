//! Exact rationals and quadratic surds `a + b*sqrt(r)`.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Rational from an integer numerator and denominator.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Generalized binomial coefficient `x(x-1)(x-2)/6`, signed.
pub fn binom3(x: &BigRational) -> BigRational {
    let one = BigRational::one();
    let two = int(2);
    x * (x - &one) * (x - &two) / int(6)
}

/// Renders as `"p/q"` in lowest terms, denominator always present.
pub fn format_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer. Decimal notation is rejected.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// A rational that serializes as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exact(pub BigRational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(&self.0))
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ratio(&self.0))
    }
}

/// Integer square root when `v` is a perfect square.
pub fn exact_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let s = v.sqrt();
    (&s * &s == *v).then_some(s)
}

/// The real number `rational + coeff * sqrt(radicand)`, `radicand >= 0`.
///
/// Perfect-square radicands are folded into the rational part on
/// construction, so `coeff == 0` exactly when the value is rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    rational: BigRational,
    coeff: BigRational,
    radicand: BigInt,
}

impl QuadraticSurd {
    /// # Panics
    ///
    /// Panics on a negative radicand.
    pub fn new(rational: BigRational, coeff: BigRational, radicand: BigInt) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        if let Some(root) = exact_sqrt(&radicand) {
            let rational = rational + coeff * BigRational::from_integer(root);
            return QuadraticSurd {
                rational,
                coeff: BigRational::zero(),
                radicand: BigInt::zero(),
            };
        }
        if coeff.is_zero() {
            return QuadraticSurd {
                rational,
                coeff,
                radicand: BigInt::zero(),
            };
        }
        QuadraticSurd {
            rational,
            coeff,
            radicand,
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        QuadraticSurd {
            rational: r,
            coeff: BigRational::zero(),
            radicand: BigInt::zero(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeff.is_zero().then_some(&self.rational)
    }

    /// Exact comparison against a rational, by sign analysis and squaring.
    pub fn cmp_rational(&self, c: &BigRational) -> Ordering {
        // compare coeff*sqrt(r) against d = c - rational
        let d = c - &self.rational;
        if self.coeff.is_zero() {
            return BigRational::zero().cmp(&d);
        }
        let lhs_sq = &self.coeff * &self.coeff * BigRational::from_integer(self.radicand.clone());
        let d_sq = &d * &d;
        match (self.coeff.is_positive(), d.is_negative()) {
            (true, true) => Ordering::Greater,
            (true, false) => lhs_sq.cmp(&d_sq),
            (false, false) => Ordering::Less,
            (false, true) => d_sq.cmp(&lhs_sq),
        }
    }

    /// Exact comparison between two surds sharing a radicand (or rational).
    ///
    /// # Panics
    ///
    /// Panics when both carry irrational parts with different radicands.
    pub fn cmp_surd(&self, other: &QuadraticSurd) -> Ordering {
        if other.coeff.is_zero() {
            return self.cmp_rational(&other.rational);
        }
        if self.coeff.is_zero() {
            return other.cmp_rational(&self.rational).reverse();
        }
        assert_eq!(self.radicand, other.radicand, "incomparable radicands");
        let diff = QuadraticSurd::new(
            &self.rational - &other.rational,
            &self.coeff - &other.coeff,
            self.radicand.clone(),
        );
        diff.cmp_rational(&BigRational::zero())
    }
}

impl fmt::Display for QuadraticSurd {
    /// `"p/q"` when rational, else `"p/q+p/q*sqrt(r)"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return f.write_str(&format_ratio(&self.rational));
        }
        write!(
            f,
            "{}+{}*sqrt({})",
            format_ratio(&self.rational),
            format_ratio(&self.coeff),
            self.radicand
        )
    }
}

/// `n * (sqrt(1 + 8m) + 3) / 4` as an exact surd.
pub fn sqrt_edge_bound(n: u64, m: u64) -> QuadraticSurd {
    let n = BigRational::from_integer(BigInt::from(n));
    QuadraticSurd::new(
        &n * ratio(3, 4),
        &n * ratio(1, 4),
        BigInt::from(1) + BigInt::from(8) * BigInt::from(m),
    )
}

/// Exact test of `e <= n * (sqrt(1 + 8m) + 3) / 4`.
///
/// Equivalent to `4e - 3n <= n * sqrt(1 + 8m)`: true outright when the left
/// side is non-positive, otherwise decided by comparing squares.
pub fn edges_within_sqrt_bound(n: u64, e: u64, m: u64) -> bool {
    let lhs = 4 * e as i128 - 3 * n as i128;
    if lhs <= 0 {
        return true;
    }
    let lhs = BigInt::from(lhs);
    let n = BigInt::from(n);
    &lhs * &lhs <= &n * &n * (BigInt::from(1) + BigInt::from(8) * BigInt::from(m))
}

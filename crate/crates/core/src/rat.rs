//! Exact coordinates on the circle group Q/Z.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;

/// A rational number taken modulo 1, stored reduced with `0 <= value < 1`.
///
/// This is one coordinate of a torsion point of an elliptic curve.  All
/// arithmetic is exact; denominators in this crate stay tiny.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat1(Ratio<i64>);

impl Rat1 {
    /// Reduce `num/den` modulo 1.  Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let r = Ratio::new(num, den);
        Rat1(r - r.floor())
    }

    pub fn zero() -> Self {
        Rat1(Ratio::from_integer(0))
    }

    pub fn half() -> Self {
        Rat1::new(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        *self.0.numer() == 0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// The order of this element in Q/Z, i.e. the reduced denominator.
    pub fn order(&self) -> i64 {
        self.denom()
    }

    /// One solution of `2x = self`; the other halvings differ by 1/2.
    pub fn halve(&self) -> Self {
        Rat1::new(self.numer(), 2 * self.denom())
    }

    pub fn double(&self) -> Self {
        *self + *self
    }

    /// Parse `"p/q"` (or a bare integer `"p"`) with `q > 0`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let (num_s, den_s) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num: i64 = num_s
            .parse()
            .map_err(|_| format!("invalid numerator `{num_s}`"))?;
        let den: i64 = match den_s {
            Some(d) => d
                .parse()
                .map_err(|_| format!("invalid denominator `{d}`"))?,
            None => 1,
        };
        if den <= 0 {
            return Err(format!("denominator must be positive, got `{den}`"));
        }
        Ok(Rat1::new(num, den))
    }
}

impl Add for Rat1 {
    type Output = Rat1;
    fn add(self, rhs: Rat1) -> Rat1 {
        let r = self.0 + rhs.0;
        Rat1(r - r.floor())
    }
}

impl Sub for Rat1 {
    type Output = Rat1;
    fn sub(self, rhs: Rat1) -> Rat1 {
        self + (-rhs)
    }
}

impl Neg for Rat1 {
    type Output = Rat1;
    fn neg(self) -> Rat1 {
        let r = -self.0;
        Rat1(r - r.floor())
    }
}

impl fmt::Display for Rat1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rat1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

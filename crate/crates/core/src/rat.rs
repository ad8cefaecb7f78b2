//! Exact rational numbers over checked `i64` arithmetic.
//!
//! Every value is kept in canonical form: positive denominator,
//! `gcd(|num|, den) == 1`. Overflow is an [`Error::Overflow`], never a silent
//! wraparound.

use crate::error::Error;
use core::cmp::Ordering;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i64,
    den: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.abs()
}

impl Rat {
    pub const ZERO: Rat = Rat { num: 0, den: 1 };
    pub const ONE: Rat = Rat { num: 1, den: 1 };

    /// Canonical rational `num/den`. Fails on a zero denominator or when
    /// reduction cannot be represented (e.g. `i64::MIN` negation).
    pub fn new(num: i64, den: i64) -> Result<Rat, Error> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = gcd(num, den);
        let (mut num, mut den) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if den < 0 {
            num = num.checked_neg().ok_or(Error::Overflow)?;
            den = den.checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(Rat { num, den })
    }

    pub fn from_int(n: i64) -> Rat {
        Rat { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn checked_add(self, other: Rat) -> Result<Rat, Error> {
        let g = gcd(self.den, other.den);
        let lhs_den = self.den / g;
        let rhs_den = other.den / g;
        let a = self
            .num
            .checked_mul(rhs_den)
            .ok_or(Error::Overflow)?;
        let b = other
            .num
            .checked_mul(lhs_den)
            .ok_or(Error::Overflow)?;
        let num = a.checked_add(b).ok_or(Error::Overflow)?;
        let den = self
            .den
            .checked_mul(rhs_den)
            .ok_or(Error::Overflow)?;
        Rat::new(num, den)
    }

    pub fn checked_sub(self, other: Rat) -> Result<Rat, Error> {
        self.checked_add(other.checked_neg()?)
    }

    pub fn checked_mul(self, other: Rat) -> Result<Rat, Error> {
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = gcd(self.num, other.den);
        let g2 = gcd(other.num, self.den);
        let num = (self.num / g1)
            .checked_mul(other.num / g2)
            .ok_or(Error::Overflow)?;
        let den = (self.den / g2)
            .checked_mul(other.den / g1)
            .ok_or(Error::Overflow)?;
        Rat::new(num, den)
    }

    pub fn checked_neg(self) -> Result<Rat, Error> {
        Ok(Rat {
            num: self.num.checked_neg().ok_or(Error::Overflow)?,
            den: self.den,
        })
    }

    pub fn checked_recip(self) -> Result<Rat, Error> {
        Rat::new(self.den, self.num)
    }

    pub fn abs(self) -> Result<Rat, Error> {
        if self.num < 0 {
            self.checked_neg()
        } else {
            Ok(self)
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        // i128 cross products cannot overflow for i64 operands.
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

//! Sparse one-variable polynomials with exact rational coefficients.

use crate::error::Error;
use crate::rat::Rat;
use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt::Write;

/// Canonical sparse polynomial in a single variable: no zero coefficients
/// are stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly1 {
    terms: BTreeMap<u32, Rat>,
}

impl Poly1 {
    pub fn zero() -> Poly1 {
        Poly1::default()
    }

    pub fn constant(c: Rat) -> Poly1 {
        let mut p = Poly1::zero();
        if !c.is_zero() {
            p.terms.insert(0, c);
        }
        p
    }

    /// Builds `c * v^e` for the variable `v` of this polynomial.
    pub fn monomial(c: Rat, e: u32) -> Poly1 {
        let mut p = Poly1::zero();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Rat)>>(it: I) -> Result<Poly1, Error> {
        let mut p = Poly1::zero();
        for (e, c) in it {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: u32) -> Rat {
        self.terms.get(&e).copied().unwrap_or(Rat::ZERO)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, Rat)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub(crate) fn add_term(&mut self, e: u32, c: Rat) -> Result<(), Error> {
        if c.is_zero() {
            return Ok(());
        }
        let cur = self.terms.get(&e).copied().unwrap_or(Rat::ZERO);
        let sum = cur.checked_add(c)?;
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly1) -> Result<Poly1, Error> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly1) -> Result<Poly1, Error> {
        self.add(&other.neg()?)
    }

    pub fn neg(&self) -> Result<Poly1, Error> {
        let mut out = Poly1::zero();
        for (e, c) in self.terms() {
            out.add_term(e, c.checked_neg()?)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Poly1) -> Result<Poly1, Error> {
        let mut out = Poly1::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e = e1.checked_add(e2).ok_or(Error::Overflow)?;
                out.add_term(e, c1.checked_mul(c2)?)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: Rat) -> Result<Poly1, Error> {
        let mut out = Poly1::zero();
        for (e, k) in self.terms() {
            out.add_term(e, k.checked_mul(c)?)?;
        }
        Ok(out)
    }

    pub fn derivative(&self) -> Result<Poly1, Error> {
        let mut out = Poly1::zero();
        for (e, c) in self.terms() {
            if e > 0 {
                out.add_term(e - 1, c.checked_mul(Rat::from_int(e as i64))?)?;
            }
        }
        Ok(out)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut sum = 0.0;
        for (e, c) in self.terms() {
            sum += c.to_f64() * powi(x, e);
        }
        sum
    }

    /// Renders with the given variable name, highest exponent first.
    pub fn to_string_with(&self, var: &str) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (idx, (&e, &c)) in self.terms.iter().rev().enumerate() {
            write_term(&mut out, idx == 0, c, &render_power(var, e));
        }
        out
    }
}

pub(crate) fn powi(x: f64, e: u32) -> f64 {
    let mut acc = 1.0;
    let mut base = x;
    let mut n = e;
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}

pub(crate) fn render_power(var: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => String::from(var),
        _ => {
            let mut s = String::from(var);
            let _ = write!(s, "^{e}");
            s
        }
    }
}

/// Appends one rendered term, handling sign separators and unit coefficients.
pub(crate) fn write_term(out: &mut String, first: bool, c: Rat, monomial: &str) {
    let mag = c.abs().expect("coefficient magnitude");
    if first {
        if c.is_negative() {
            out.push('-');
        }
    } else if c.is_negative() {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    if monomial.is_empty() {
        let _ = write!(out, "{mag}");
    } else if mag == Rat::ONE {
        out.push_str(monomial);
    } else {
        let _ = write!(out, "{mag}*{monomial}");
    }
}

impl core::fmt::Display for Poly1 {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.to_string_with("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn derivative_drops_constant() {
        let p = Poly1::from_terms([(0, r(5, 1)), (2, r(1, 4)), (3, r(1, 6))]).unwrap();
        let d = p.derivative().unwrap();
        assert_eq!(d, Poly1::from_terms([(1, r(1, 2)), (2, r(1, 2))]).unwrap());
    }

    #[test]
    fn rendering() {
        let f = Poly1::from_terms([(2, r(1, 4)), (3, r(1, 6))]).unwrap();
        assert_eq!(f.to_string_with("x"), "1/6*x^3 + 1/4*x^2");
        let g = Poly1::from_terms([(2, r(1, 4)), (3, r(-1, 6))]).unwrap();
        assert_eq!(g.to_string_with("y"), "-1/6*y^3 + 1/4*y^2");
        assert_eq!(Poly1::zero().to_string_with("x"), "0");
        let m = Poly1::monomial(r(-1, 1), 1);
        assert_eq!(m.to_string_with("x"), "-x");
    }

    #[test]
    fn eval_matches_terms() {
        let p = Poly1::from_terms([(0, r(1, 2)), (1, r(-3, 1)), (4, r(2, 5))]).unwrap();
        let x = 1.7f64;
        let expect = 0.5 - 3.0 * x + 0.4 * x.powi(4);
        assert!((p.eval(x) - expect).abs() < 1e-12);
    }
}

//! Sparse two-variable polynomials over exact rationals, plus the
//! `(q1, q2) <-> (x, y) = (q1+q2, q1-q2)` change of frame.

use crate::error::Error;
use crate::poly1::{powi, render_power, write_term, Poly1};
use crate::rat::Rat;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

/// Variable selector for partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    Q1,
    Q2,
}

/// Canonical sparse polynomial in `q1^i q2^j` (or `x^i y^j` after [`Poly2::to_xy`]).
/// Zero coefficients are never stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl Poly2 {
    pub fn zero() -> Poly2 {
        Poly2::default()
    }

    pub fn constant(c: Rat) -> Poly2 {
        let mut p = Poly2::zero();
        if !c.is_zero() {
            p.terms.insert((0, 0), c);
        }
        p
    }

    /// Builds `c * q1^i * q2^j`.
    pub fn monomial(c: Rat, i: u32, j: u32) -> Poly2 {
        let mut p = Poly2::zero();
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rat)>>(it: I) -> Result<Poly2, Error> {
        let mut p = Poly2::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, c)?;
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).copied().unwrap_or(Rat::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), Rat)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub(crate) fn add_term(&mut self, i: u32, j: u32, c: Rat) -> Result<(), Error> {
        if c.is_zero() {
            return Ok(());
        }
        let cur = self.terms.get(&(i, j)).copied().unwrap_or(Rat::ZERO);
        let sum = cur.checked_add(c)?;
        if sum.is_zero() {
            self.terms.remove(&(i, j));
        } else {
            self.terms.insert((i, j), sum);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly2) -> Result<Poly2, Error> {
        let mut out = self.clone();
        for ((i, j), c) in other.terms() {
            out.add_term(i, j, c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly2) -> Result<Poly2, Error> {
        self.add(&other.neg()?)
    }

    pub fn neg(&self) -> Result<Poly2, Error> {
        let mut out = Poly2::zero();
        for ((i, j), c) in self.terms() {
            out.add_term(i, j, c.checked_neg()?)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Poly2) -> Result<Poly2, Error> {
        let mut out = Poly2::zero();
        for ((i1, j1), c1) in self.terms() {
            for ((i2, j2), c2) in other.terms() {
                let i = i1.checked_add(i2).ok_or(Error::Overflow)?;
                let j = j1.checked_add(j2).ok_or(Error::Overflow)?;
                out.add_term(i, j, c1.checked_mul(c2)?)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: Rat) -> Result<Poly2, Error> {
        let mut out = Poly2::zero();
        for ((i, j), k) in self.terms() {
            out.add_term(i, j, k.checked_mul(c)?)?;
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Poly2, Error> {
        let mut acc = Poly2::constant(Rat::ONE);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn partial(&self, var: Var) -> Result<Poly2, Error> {
        let mut out = Poly2::zero();
        for ((i, j), c) in self.terms() {
            match var {
                Var::Q1 if i > 0 => {
                    out.add_term(i - 1, j, c.checked_mul(Rat::from_int(i as i64))?)?;
                }
                Var::Q2 if j > 0 => {
                    out.add_term(i, j - 1, c.checked_mul(Rat::from_int(j as i64))?)?;
                }
                _ => {}
            }
        }
        Ok(out)
    }

    pub fn eval(&self, q1: f64, q2: f64) -> Result<f64, Error> {
        let mut sum = 0.0;
        for ((i, j), c) in self.terms() {
            sum += c.to_f64() * powi(q1, i) * powi(q2, j);
        }
        if sum.is_finite() {
            Ok(sum)
        } else {
            Err(Error::Numerical)
        }
    }

    /// Rewrites the polynomial in the rotated frame `x = q1+q2`, `y = q1-q2`,
    /// i.e. substitutes `q1 = (x+y)/2`, `q2 = (x-y)/2`. The result is a
    /// `Poly2` whose exponent pairs are read as `x^i y^j`.
    pub fn to_xy(&self) -> Result<Poly2, Error> {
        let half = Rat::new(1, 2)?;
        let q1_sub = Poly2::from_terms([((1, 0), half), ((0, 1), half)])?;
        let q2_sub = Poly2::from_terms([((1, 0), half), ((0, 1), half.checked_neg()?)])?;
        let mut out = Poly2::zero();
        for ((i, j), c) in self.terms() {
            let term = q1_sub.pow(i)?.mul(&q2_sub.pow(j)?)?.scale(c)?;
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Builds `fx(q1+q2) + sign * gy(q1-q2)` where `sign` is `+1` or `-1`.
    pub fn from_xy(fx: &Poly1, gy: &Poly1, g_sign: i64) -> Result<Poly2, Error> {
        debug_assert!(g_sign == 1 || g_sign == -1);
        let x_sub = Poly2::from_terms([((1, 0), Rat::ONE), ((0, 1), Rat::ONE)])?;
        let y_sub = Poly2::from_terms([((1, 0), Rat::ONE), ((0, 1), Rat::from_int(-1))])?;
        let mut out = Poly2::zero();
        for (e, c) in fx.terms() {
            out = out.add(&x_sub.pow(e)?.scale(c)?)?;
        }
        let sign = Rat::from_int(g_sign);
        for (e, c) in gy.terms() {
            out = out.add(&y_sub.pow(e)?.scale(c.checked_mul(sign)?)?)?;
        }
        Ok(out)
    }

    /// Exponent pairs in canonical rendering order.
    pub(crate) fn ordered_exponents(&self) -> Vec<(u32, u32)> {
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (core::cmp::Reverse(i + j), i.min(j), core::cmp::Reverse(i)));
        keys
    }

    /// Canonical text rendering with the given variable names. Terms appear
    /// highest total degree first, pure powers before mixed products.
    pub fn to_string_with(&self, v1: &str, v2: &str) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (idx, (i, j)) in self.ordered_exponents().into_iter().enumerate() {
            let c = self.coeff(i, j);
            let p1 = render_power(v1, i);
            let p2 = render_power(v2, j);
            let monomial = match (p1.is_empty(), p2.is_empty()) {
                (true, true) => String::new(),
                (false, true) => p1,
                (true, false) => p2,
                (false, false) => {
                    let mut s = p1;
                    s.push('*');
                    s.push_str(&p2);
                    s
                }
            };
            write_term(&mut out, idx == 0, c, &monomial);
        }
        out
    }
}

impl core::fmt::Display for Poly2 {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.to_string_with("q1", "q2"))
    }
}

//! Closed-form one-variable functions: polynomials plus signed-exponent
//! power laws such as `a / x^2`. Closed under differentiation, which is all
//! the separated equations of motion need.

use crate::error::Error;
use crate::poly1::{powi, Poly1};
use crate::rat::Rat;
use alloc::vec::Vec;

/// Guard radius around a pole: evaluating a negative-exponent term with
/// `|argument| < EPS_SING` is a [`Error::Singularity`], never an infinity.
pub const EPS_SING: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fn1Term {
    Polynomial(Poly1),
    /// `coeff * x^exponent` with a possibly negative exponent.
    PowerLaw { coeff: Rat, exponent: i32 },
}

/// Sum of polynomial and power-law terms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Fn1 {
    terms: Vec<Fn1Term>,
}

impl Fn1 {
    pub fn zero() -> Fn1 {
        Fn1::default()
    }

    pub fn from_poly(p: Poly1) -> Fn1 {
        if p.is_zero() {
            Fn1::zero()
        } else {
            Fn1 {
                terms: alloc::vec![Fn1Term::Polynomial(p)],
            }
        }
    }

    /// `coeff * x^exponent`, e.g. `power_law(alpha, -2)` for `alpha / x^2`.
    pub fn power_law(coeff: Rat, exponent: i32) -> Fn1 {
        if coeff.is_zero() {
            return Fn1::zero();
        }
        if exponent >= 0 {
            Fn1::from_poly(Poly1::monomial(coeff, exponent as u32))
        } else {
            Fn1 {
                terms: alloc::vec![Fn1Term::PowerLaw { coeff, exponent }],
            }
        }
    }

    pub fn terms(&self) -> &[Fn1Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when some term has a pole at the origin.
    pub fn has_singularity(&self) -> bool {
        self.terms
            .iter()
            .any(|t| matches!(t, Fn1Term::PowerLaw { .. }))
    }

    pub fn scale(&self, c: Rat) -> Result<Fn1, Error> {
        let mut out = Vec::new();
        for t in &self.terms {
            match t {
                Fn1Term::Polynomial(p) => {
                    let s = p.scale(c)?;
                    if !s.is_zero() {
                        out.push(Fn1Term::Polynomial(s));
                    }
                }
                Fn1Term::PowerLaw { coeff, exponent } => {
                    let s = coeff.checked_mul(c)?;
                    if !s.is_zero() {
                        out.push(Fn1Term::PowerLaw { coeff: s, exponent: *exponent });
                    }
                }
            }
        }
        Ok(Fn1 { terms: out })
    }

    pub fn derivative(&self) -> Result<Fn1, Error> {
        let mut out = Vec::new();
        for t in &self.terms {
            match t {
                Fn1Term::Polynomial(p) => {
                    let d = p.derivative()?;
                    if !d.is_zero() {
                        out.push(Fn1Term::Polynomial(d));
                    }
                }
                Fn1Term::PowerLaw { coeff, exponent } => {
                    let c = coeff.checked_mul(Rat::from_int(*exponent as i64))?;
                    if !c.is_zero() {
                        out.push(Fn1Term::PowerLaw {
                            coeff: c,
                            exponent: exponent - 1,
                        });
                    }
                }
            }
        }
        Ok(Fn1 { terms: out })
    }

    /// Renders with the given variable name; power-law terms print a signed
    /// exponent, e.g. `1/4*x^-2`.
    pub fn to_string_with(&self, var: &str) -> alloc::string::String {
        use alloc::string::String;
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (idx, t) in self.terms.iter().enumerate() {
            match t {
                Fn1Term::Polynomial(p) => {
                    let s = p.to_string_with(var);
                    if idx == 0 {
                        out.push_str(&s);
                    } else if let Some(rest) = s.strip_prefix('-') {
                        let _ = write!(out, " - {rest}");
                    } else {
                        let _ = write!(out, " + {s}");
                    }
                }
                Fn1Term::PowerLaw { coeff, exponent } => {
                    let mag = coeff.abs().expect("coefficient magnitude");
                    if idx == 0 {
                        if coeff.is_negative() {
                            out.push('-');
                        }
                    } else if coeff.is_negative() {
                        out.push_str(" - ");
                    } else {
                        out.push_str(" + ");
                    }
                    if mag == Rat::ONE {
                        let _ = write!(out, "{var}^{exponent}");
                    } else {
                        let _ = write!(out, "{mag}*{var}^{exponent}");
                    }
                }
            }
        }
        out
    }

    pub fn eval(&self, x: f64) -> Result<f64, Error> {
        let mut sum = 0.0;
        for t in &self.terms {
            match t {
                Fn1Term::Polynomial(p) => sum += p.eval(x),
                Fn1Term::PowerLaw { coeff, exponent } => {
                    debug_assert!(*exponent < 0);
                    let abs_x = if x < 0.0 { -x } else { x };
                    if abs_x < EPS_SING {
                        return Err(Error::Singularity);
                    }
                    sum += coeff.to_f64() / powi(x, (-exponent) as u32);
                }
            }
        }
        if sum.is_finite() {
            Ok(sum)
        } else {
            Err(Error::Numerical)
        }
    }
}

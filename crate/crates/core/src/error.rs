//! Error type shared across the crate.

use crate::parse::ParseError;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Checked 64-bit rational arithmetic overflowed.
    Overflow,
    /// A rational literal had denominator zero.
    ZeroDenominator,
    /// Syntax error while parsing a potential expression.
    Parse(ParseError),
    /// An operation requiring a separable potential was applied to a
    /// non-separable one.
    NotSeparable,
    /// A negative-exponent term was evaluated within `EPS_SING` of its pole.
    Singularity,
    /// A floating-point computation produced a non-finite value.
    Numerical,
    /// The least-squares normal equations were singular.
    DegenerateFit,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Overflow => write!(f, "rational arithmetic overflow"),
            Error::ZeroDenominator => write!(f, "rational with zero denominator"),
            Error::Parse(e) => write!(f, "{e}"),
            Error::NotSeparable => write!(f, "potential is not separable"),
            Error::Singularity => write!(f, "evaluation too close to a singularity"),
            Error::Numerical => write!(f, "non-finite value in numerical computation"),
            Error::DegenerateFit => write!(f, "singular normal equations in quadratic fit"),
        }
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

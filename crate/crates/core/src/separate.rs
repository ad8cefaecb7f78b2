//! Separability of a two-variable potential as `f(q1+q2) + g(q1-q2)`,
//! construction of the companion potential `f(q1+q2) - g(q1-q2)`, and the
//! two first integrals of the shared Lagrange equations.
//!
//! The decision procedure is exact: rewrite the potential in the rotated
//! frame `(x, y) = (q1+q2, q1-q2)` and check for mixed monomials. The pure-x
//! part (plus the constant) is `f`, the pure-y part is `g`; any surviving
//! mixed monomial is a certificate that no such splitting exists.

use crate::error::Error;
use crate::poly1::Poly1;
use crate::poly2::{Poly2, Var};
use crate::rat::Rat;
use alloc::vec::Vec;

/// One obstructing mixed monomial `c * x^i * y^j` with `i > 0`, `j > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub x_exp: u32,
    pub y_exp: u32,
    pub coeff: Rat,
}

/// Outcome of the separability test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationResult {
    /// `U = f(q1+q2) + g(q1-q2)` with the constant-splitting convention
    /// `g(0) = 0` (any constant lives in `f`).
    Separable { f: Poly1, g: Poly1 },
    /// The mixed monomials of `to_xy(U)` witnessing non-separability.
    NotSeparable { obstructions: Vec<Obstruction> },
}

/// Kinetic part of a quadratic first integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kinetic {
    /// `1/2 * (v1^2 + v2^2)` — the energy of the diagonal Lagrangian.
    Diag,
    /// `v1 * v2` — the energy of the cross-kinetic companion Lagrangian.
    Cross,
}

/// A first integral `kinetic(v1, v2) + potential(q1, q2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralExpr {
    pub kinetic: Kinetic,
    pub potential: Poly2,
}

impl IntegralExpr {
    pub fn eval(&self, q1: f64, q2: f64, v1: f64, v2: f64) -> Result<f64, Error> {
        let kin = match self.kinetic {
            Kinetic::Diag => 0.5 * (v1 * v1 + v2 * v2),
            Kinetic::Cross => v1 * v2,
        };
        let val = kin + self.potential.eval(q1, q2)?;
        if val.is_finite() {
            Ok(val)
        } else {
            Err(Error::Numerical)
        }
    }
}

/// Decides whether `U` splits as `f(q1+q2) + g(q1-q2)`.
pub fn decompose(u: &Poly2) -> Result<SeparationResult, Error> {
    let v = u.to_xy()?;
    let mut obstructions = Vec::new();
    let mut f = Poly1::zero();
    let mut g = Poly1::zero();
    for (i, j) in v.ordered_exponents() {
        let c = v.coeff(i, j);
        if i > 0 && j > 0 {
            obstructions.push(Obstruction {
                x_exp: i,
                y_exp: j,
                coeff: c,
            });
        } else if j == 0 {
            // Pure x powers and the constant term both land in f.
            f.add_term(i, c)?;
        } else {
            g.add_term(j, c)?;
        }
    }
    if obstructions.is_empty() {
        Ok(SeparationResult::Separable { f, g })
    } else {
        Ok(SeparationResult::NotSeparable { obstructions })
    }
}

/// The companion potential `f(q1+q2) - g(q1-q2)` of Theorem-style duality:
/// the cross-kinetic Lagrangian with this potential has the same Lagrange
/// equations as the diagonal one with `f(q1+q2) + g(q1-q2)`.
pub fn companion_potential(f: &Poly1, g: &Poly1) -> Result<Poly2, Error> {
    Poly2::from_xy(f, g, -1)
}

/// Checks the coincidence conditions `dU/dq1 = dUtilde/dq2` and
/// `dU/dq2 = dUtilde/dq1` as exact polynomial identities.
pub fn check_coincidence(u: &Poly2, utilde: &Poly2) -> Result<bool, Error> {
    let a = u.partial(Var::Q1)? == utilde.partial(Var::Q2)?;
    let b = u.partial(Var::Q2)? == utilde.partial(Var::Q1)?;
    Ok(a && b)
}

/// The second first integral `K = v1*v2 + f(q1+q2) - g(q1-q2)` of a
/// separable potential. Fails with [`Error::NotSeparable`] otherwise.
pub fn second_integral(u: &Poly2) -> Result<IntegralExpr, Error> {
    match decompose(u)? {
        SeparationResult::Separable { f, g } => Ok(IntegralExpr {
            kinetic: Kinetic::Cross,
            potential: companion_potential(&f, &g)?,
        }),
        SeparationResult::NotSeparable { .. } => Err(Error::NotSeparable),
    }
}

/// The energy `E = 1/2*(v1^2 + v2^2) + U(q1, q2)`.
pub fn energy_integral(u: &Poly2) -> IntegralExpr {
    IntegralExpr {
        kinetic: Kinetic::Diag,
        potential: u.clone(),
    }
}

/// Right-hand sides of the separated equations: `x'' = -2 f'(x)`,
/// `y'' = -2 g'(y)`.
pub fn separated_forces(f: &Poly1, g: &Poly1) -> Result<(Poly1, Poly1), Error> {
    let minus_two = Rat::from_int(-2);
    Ok((
        f.derivative()?.scale(minus_two)?,
        g.derivative()?.scale(minus_two)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_potential;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    fn sk() -> Poly2 {
        parse_potential("1/2*(q1^2+q2^2)+q1^2*q2+1/3*q2^3").unwrap()
    }

    fn sk_f() -> Poly1 {
        Poly1::from_terms([(2, r(1, 4)), (3, r(1, 6))]).unwrap()
    }

    fn sk_g() -> Poly1 {
        Poly1::from_terms([(2, r(1, 4)), (3, r(-1, 6))]).unwrap()
    }

    #[test]
    fn sawada_kotera_splits() {
        match decompose(&sk()).unwrap() {
            SeparationResult::Separable { f, g } => {
                assert_eq!(f, sk_f());
                assert_eq!(g, sk_g());
            }
            other => panic!("expected separable, got {other:?}"),
        }
    }

    #[test]
    fn zero_splits_trivially() {
        match decompose(&Poly2::zero()).unwrap() {
            SeparationResult::Separable { f, g } => {
                assert!(f.is_zero());
                assert!(g.is_zero());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn product_splits() {
        let u = parse_potential("q1*q2").unwrap();
        match decompose(&u).unwrap() {
            SeparationResult::Separable { f, g } => {
                assert_eq!(f, Poly1::monomial(r(1, 4), 2));
                assert_eq!(g, Poly1::monomial(r(-1, 4), 2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn henon_heiles_b1_obstructed() {
        let u = parse_potential("1/2*(q1^2+q2^2)+q1^2*q2-1/3*q2^3").unwrap();
        match decompose(&u).unwrap() {
            SeparationResult::NotSeparable { obstructions } => {
                assert_eq!(obstructions.len(), 2);
                // (1 + b)/8 with b = 1.
                assert_eq!(
                    obstructions[0],
                    Obstruction { x_exp: 2, y_exp: 1, coeff: r(1, 4) }
                );
                assert_eq!(
                    obstructions[1],
                    Obstruction { x_exp: 1, y_exp: 2, coeff: r(-1, 4) }
                );
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn companion_matches_dual_potential() {
        let utilde = companion_potential(&sk_f(), &sk_g()).unwrap();
        assert_eq!(utilde, parse_potential("q1*q2+1/3*q1^3+q1*q2^2").unwrap());

        let f = Poly1::monomial(r(1, 4), 2);
        let g = Poly1::monomial(r(-1, 4), 2);
        assert_eq!(
            companion_potential(&f, &g).unwrap(),
            parse_potential("1/2*(q1^2+q2^2)").unwrap()
        );
        assert!(companion_potential(&Poly1::zero(), &Poly1::zero())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn coincidence_conditions() {
        let utilde = companion_potential(&sk_f(), &sk_g()).unwrap();
        assert!(check_coincidence(&sk(), &utilde).unwrap());
        assert!(check_coincidence(&Poly2::zero(), &Poly2::zero()).unwrap());
        let q1sq = parse_potential("q1^2").unwrap();
        assert!(!check_coincidence(&q1sq, &q1sq).unwrap());
    }

    #[test]
    fn second_integral_of_sk() {
        let k = second_integral(&sk()).unwrap();
        assert_eq!(k.kinetic, Kinetic::Cross);
        assert_eq!(
            k.potential,
            parse_potential("q1*q2+1/3*q1^3+q1*q2^2").unwrap()
        );

        let harmonic = parse_potential("1/2*(q1^2+q2^2)").unwrap();
        let k = second_integral(&harmonic).unwrap();
        assert_eq!(k.potential, parse_potential("q1*q2").unwrap());

        let hh1 = parse_potential("1/2*(q1^2+q2^2)+q1^2*q2-1/3*q2^3").unwrap();
        assert_eq!(second_integral(&hh1), Err(Error::NotSeparable));
    }

    #[test]
    fn second_integral_with_zero_g() {
        // g = 0 means Utilde = U.
        let u = Poly2::from_xy(&Poly1::monomial(r(1, 6), 3), &Poly1::zero(), 1).unwrap();
        let k = second_integral(&u).unwrap();
        assert_eq!(k.potential, u);
    }

    #[test]
    fn energy_integral_shape() {
        let e = energy_integral(&sk());
        assert_eq!(e.kinetic, Kinetic::Diag);
        assert_eq!(e.potential, sk());
        let at_rest = e.eval(0.3, -0.2, 0.0, 0.0).unwrap();
        assert!((at_rest - sk().eval(0.3, -0.2).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn separated_forces_of_sk() {
        let (fx, fy) = separated_forces(&sk_f(), &sk_g()).unwrap();
        // x'' = -x - x^2, y'' = -y + y^2
        assert_eq!(
            fx,
            Poly1::from_terms([(1, r(-1, 1)), (2, r(-1, 1))]).unwrap()
        );
        assert_eq!(
            fy,
            Poly1::from_terms([(1, r(-1, 1)), (2, r(1, 1))]).unwrap()
        );
        let (h, _) = separated_forces(&Poly1::monomial(r(1, 4), 2), &Poly1::zero()).unwrap();
        assert_eq!(h, Poly1::monomial(r(-1, 1), 1));
        let (c, _) =
            separated_forces(&Poly1::constant(r(7, 2)), &Poly1::zero()).unwrap();
        assert!(c.is_zero());
    }
}

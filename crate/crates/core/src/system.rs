//! System catalog and acceleration fields in both frames.

use crate::error::Error;
use crate::fn1::Fn1;
use crate::poly2::{Poly2, Var};
use crate::rat::Rat;
use crate::separate::{decompose, SeparationResult};
use alloc::format;
use alloc::string::String;

/// A potential given in the original `(q1, q2)` frame. Partials are
/// precomputed once so stepping stays cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFrameSystem {
    pub u: Poly2,
    du_q1: Poly2,
    du_q2: Poly2,
}

impl QFrameSystem {
    pub fn new(u: Poly2) -> Result<QFrameSystem, Error> {
        let du_q1 = u.partial(Var::Q1)?;
        let du_q2 = u.partial(Var::Q2)?;
        Ok(QFrameSystem { u, du_q1, du_q2 })
    }
}

/// A potential given directly as separated `f(x)`, `g(y)`. Admits power-law
/// terms the polynomial frame cannot express. Separated forces `-2f'`,
/// `-2g'` are precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XYFrameSystem {
    pub f: Fn1,
    pub g: Fn1,
    force_x: Fn1,
    force_y: Fn1,
}

impl XYFrameSystem {
    pub fn new(f: Fn1, g: Fn1) -> Result<XYFrameSystem, Error> {
        let minus_two = Rat::from_int(-2);
        let force_x = f.derivative()?.scale(minus_two)?;
        let force_y = g.derivative()?.scale(minus_two)?;
        Ok(XYFrameSystem { f, g, force_x, force_y })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemForm {
    QFrame(QFrameSystem),
    XYFrame(XYFrameSystem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    pub name: String,
    pub form: SystemForm,
}

impl SystemSpec {
    pub fn from_potential(name: &str, u: Poly2) -> Result<SystemSpec, Error> {
        Ok(SystemSpec {
            name: String::from(name),
            form: SystemForm::QFrame(QFrameSystem::new(u)?),
        })
    }

    pub fn from_separated(name: &str, f: Fn1, g: Fn1) -> Result<SystemSpec, Error> {
        Ok(SystemSpec {
            name: String::from(name),
            form: SystemForm::XYFrame(XYFrameSystem::new(f, g)?),
        })
    }

    /// The separated `(f, g)` of this system: native for XY-frame systems,
    /// via exact decomposition for separable polynomial ones.
    pub fn separated_fg(&self) -> Result<(Fn1, Fn1), Error> {
        match &self.form {
            SystemForm::XYFrame(xs) => Ok((xs.f.clone(), xs.g.clone())),
            SystemForm::QFrame(qs) => match decompose(&qs.u)? {
                SeparationResult::Separable { f, g } => {
                    Ok((Fn1::from_poly(f), Fn1::from_poly(g)))
                }
                SeparationResult::NotSeparable { .. } => Err(Error::NotSeparable),
            },
        }
    }

    /// Rewrites the system in the separated frame. Fails for non-separable
    /// polynomial potentials.
    pub fn to_xy_system(&self) -> Result<XYFrameSystem, Error> {
        match &self.form {
            SystemForm::XYFrame(xs) => Ok(xs.clone()),
            SystemForm::QFrame(_) => {
                let (f, g) = self.separated_fg()?;
                XYFrameSystem::new(f, g)
            }
        }
    }
}

/// Catalog selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Catalog {
    /// Sawada-Kotera: `1/2*(q1^2+q2^2) + q1^2*q2 + 1/3*q2^3`.
    Sk,
    /// Henon-Heiles family: `1/2*(q1^2+q2^2) + q1^2*q2 - (b/3)*q2^3`.
    Hh(Rat),
    /// Inverse-square pair potential, separated: `f = af/x^2`, `g = ag/y^2`.
    Calogero(Rat, Rat),
    /// `1/2*(q1^2+q2^2)`.
    Harmonic,
}

pub fn catalog(which: Catalog) -> Result<SystemSpec, Error> {
    let half = Rat::new(1, 2)?;
    let quad = Poly2::from_terms([((2, 0), half), ((0, 2), half)])?;
    match which {
        Catalog::Sk => catalog(Catalog::Hh(Rat::from_int(-1)))
            .map(|mut s| {
                s.name = String::from("sk");
                s
            }),
        Catalog::Hh(b) => {
            let cubic = Poly2::from_terms([
                ((2, 1), Rat::ONE),
                ((0, 3), b.checked_mul(Rat::new(-1, 3)?)?),
            ])?;
            SystemSpec::from_potential(&format!("hh(b={b})"), quad.add(&cubic)?)
        }
        Catalog::Calogero(af, ag) => SystemSpec::from_separated(
            &format!("calogero(af={af},ag={ag})"),
            Fn1::power_law(af, -2),
            Fn1::power_law(ag, -2),
        ),
        Catalog::Harmonic => SystemSpec::from_potential("harmonic", quad),
    }
}

/// `(q1'', q2'') = (-dU/dq1, -dU/dq2)` at a point.
pub fn accel_q(sys: &QFrameSystem, q1: f64, q2: f64) -> Result<(f64, f64), Error> {
    let a1 = -sys.du_q1.eval(q1, q2)?;
    let a2 = -sys.du_q2.eval(q1, q2)?;
    if a1.is_finite() && a2.is_finite() {
        Ok((a1, a2))
    } else {
        Err(Error::Numerical)
    }
}

/// `(x'', y'') = (-2 f'(x), -2 g'(y))` at a point.
pub fn accel_xy(sys: &XYFrameSystem, x: f64, y: f64) -> Result<(f64, f64), Error> {
    let ax = sys.force_x.eval(x)?;
    let ay = sys.force_y.eval(y)?;
    Ok((ax, ay))
}

/// Acceleration of an XY-frame system expressed in the original frame:
/// `q1'' = (x'' + y'')/2`, `q2'' = (x'' - y'')/2` with `x = q1+q2`,
/// `y = q1-q2`.
pub fn accel_q_of_xy(sys: &XYFrameSystem, q1: f64, q2: f64) -> Result<(f64, f64), Error> {
    let (ax, ay) = accel_xy(sys, q1 + q2, q1 - q2)?;
    Ok(((ax + ay) / 2.0, (ax - ay) / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_potential;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn sk_matches_parsed_potential() {
        let sk = catalog(Catalog::Sk).unwrap();
        let expect = parse_potential("1/2*(q1^2+q2^2)+q1^2*q2+1/3*q2^3").unwrap();
        match &sk.form {
            SystemForm::QFrame(qs) => assert_eq!(qs.u, expect),
            _ => panic!("sk is a q-frame system"),
        }
    }

    #[test]
    fn sk_is_hh_minus_one() {
        let sk = catalog(Catalog::Sk).unwrap();
        let hh = catalog(Catalog::Hh(r(-1, 1))).unwrap();
        assert_eq!(sk.form, hh.form);
    }

    #[test]
    fn calogero_forces() {
        let cal = catalog(Catalog::Calogero(Rat::ONE, Rat::ONE)).unwrap();
        let xs = cal.to_xy_system().unwrap();
        // x'' = 4 af / x^3
        let (ax, ay) = accel_xy(&xs, 2.0, 1.0).unwrap();
        assert!((ax - 4.0 / 8.0).abs() < 1e-14);
        assert!((ay - 4.0).abs() < 1e-14);
    }

    #[test]
    fn sk_accel_matches_equations_of_motion() {
        let sk = catalog(Catalog::Sk).unwrap();
        let qs = match &sk.form {
            SystemForm::QFrame(qs) => qs,
            _ => unreachable!(),
        };
        let (q1, q2) = (0.3, -0.7);
        let (a1, a2) = accel_q(qs, q1, q2).unwrap();
        assert!((a1 - (-q1 * (1.0 + 2.0 * q2))).abs() < 1e-14);
        assert!((a2 - (-q2 - q1 * q1 - q2 * q2)).abs() < 1e-14);
        // Critical point at the origin.
        let (a1, a2) = accel_q(qs, 0.0, 0.0).unwrap();
        assert_eq!((a1, a2), (0.0, 0.0));
    }

    #[test]
    fn harmonic_accel() {
        let h = catalog(Catalog::Harmonic).unwrap();
        let qs = match &h.form {
            SystemForm::QFrame(qs) => qs,
            _ => unreachable!(),
        };
        assert_eq!(accel_q(qs, 1.0, 0.0).unwrap(), (-1.0, 0.0));
    }

    #[test]
    fn separated_sk_accel() {
        let sk = catalog(Catalog::Sk).unwrap();
        let xs = sk.to_xy_system().unwrap();
        let (x, y) = (0.4, -0.3);
        let (ax, ay) = accel_xy(&xs, x, y).unwrap();
        assert!((ax - (-x - x * x)).abs() < 1e-14);
        assert!((ay - (-y + y * y)).abs() < 1e-14);
        // Constant f, g produce no force.
        let flat = XYFrameSystem::new(
            Fn1::from_poly(crate::poly1::Poly1::constant(r(3, 1))),
            Fn1::zero(),
        )
        .unwrap();
        assert_eq!(accel_xy(&flat, 1.0, 1.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn nonseparable_has_no_xy_system() {
        let hh1 = catalog(Catalog::Hh(Rat::ONE)).unwrap();
        assert_eq!(hh1.to_xy_system().err(), Some(Error::NotSeparable));
    }
}

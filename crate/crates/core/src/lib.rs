//! Exact separability analysis and numerical dynamics for two-degree-of-freedom
//! Lagrangian systems whose potential splits as `f(q1+q2) + g(q1-q2)`.
//!
//! The crate decides separability over the rationals, constructs the companion
//! potential `f(q1+q2) - g(q1-q2)` and the cross-kinetic first integral
//! `K = v1*v2 + Utilde`, and integrates the shared Lagrange equations in either
//! the original `(q1, q2)` frame or the separated `(x, y) = (q1+q2, q1-q2)`
//! frame with fixed-step RK4 or position-Verlet.
//!
//! Everything symbolic is exact: coefficients are overflow-checked `i64`
//! rationals, polynomials are canonical sparse maps, and equality is
//! structural. Floating point enters only at evaluation time.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod fn1;
pub mod integrate;
pub mod parse;
pub mod poly1;
pub mod poly2;
pub mod quadfit;
pub mod rat;
pub mod section;
pub mod separate;
pub mod system;

pub use error::Error;
pub use fn1::{Fn1, Fn1Term, EPS_SING};
pub use integrate::{
    conserved_identity_check, drift_report, frame_map, simulate, step_rk4, step_verlet,
    DriftReport, Frame, FrameDirection, Method, State, Trajectory,
};
pub use parse::{parse_potential, parse_rat, print_potential, ParseError};
pub use poly1::Poly1;
pub use poly2::{Poly2, Var};
pub use quadfit::{fit_quadratic_law, NormComponent, QuadraticLawFit};
pub use rat::Rat;
pub use section::poincare_section;
pub use separate::{
    check_coincidence, companion_potential, decompose, energy_integral, second_integral,
    separated_forces, IntegralExpr, Kinetic, Obstruction, SeparationResult,
};
pub use system::{
    accel_q, accel_q_of_xy, accel_xy, catalog, Catalog, QFrameSystem, SystemForm, SystemSpec,
    XYFrameSystem,
};

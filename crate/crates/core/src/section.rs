//! Poincaré sections on the surface `q1 = 0`, `v1 > 0`.

use crate::error::Error;
use crate::integrate::{simulate, Frame, Method, State};
use crate::system::SystemSpec;
use alloc::vec::Vec;

/// Integrates each orbit in the original frame and collects the section
/// crossings. A crossing is a sign change of `q1` between consecutive
/// samples; the point is located by linear interpolation in `t` and kept
/// when the interpolated `v1` is positive.
pub fn poincare_section(
    spec: &SystemSpec,
    orbits: &[State],
    dt: f64,
    t_end: f64,
    method: Method,
) -> Result<Vec<(f64, f64)>, Error> {
    let mut points = Vec::new();
    for s0 in orbits {
        let traj = simulate(spec, s0, dt, t_end, method, Frame::Q)?;
        for pair in traj.samples.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if a.q1 == 0.0 {
                if a.v1 > 0.0 {
                    points.push((a.q2, a.v2));
                }
                continue;
            }
            if a.q1 * b.q1 < 0.0 {
                let tau = a.q1 / (a.q1 - b.q1);
                let v1 = a.v1 + tau * (b.v1 - a.v1);
                if v1 > 0.0 {
                    let q2 = a.q2 + tau * (b.q2 - a.q2);
                    let v2 = a.v2 + tau * (b.v2 - a.v2);
                    points.push((q2, v2));
                }
            }
        }
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{catalog, Catalog};

    #[test]
    fn harmonic_section_is_an_ellipse() {
        let h = catalog(Catalog::Harmonic).unwrap();
        let s0 = State::new(0.0, 0.3, 0.2, 0.1, -0.4);
        let pts = poincare_section(&h, &[s0], 1e-3, 50.0, Method::Rk4).unwrap();
        assert!(pts.len() >= 3, "expected several crossings, got {}", pts.len());
        // On q1 = 0 the q2 motion is an independent oscillator, so all
        // crossings share 1/2 v2^2 + 1/2 q2^2.
        let level = 0.5 * pts[0].1 * pts[0].1 + 0.5 * pts[0].0 * pts[0].0;
        for (q2, v2) in &pts {
            let e = 0.5 * v2 * v2 + 0.5 * q2 * q2;
            assert!((e - level).abs() < 1e-6, "{e} vs {level}");
        }
    }

    #[test]
    fn section_points_respect_energy_bound() {
        let sk = catalog(Catalog::Sk).unwrap();
        let s0 = State::new(0.0, 0.1, 0.1, 0.05, 0.05);
        let u = match &sk.form {
            crate::system::SystemForm::QFrame(qs) => qs.u.clone(),
            _ => unreachable!(),
        };
        let e0 = 0.5 * (s0.v1 * s0.v1 + s0.v2 * s0.v2) + u.eval(s0.q1, s0.q2).unwrap();
        let pts = poincare_section(&sk, &[s0], 1e-3, 200.0, Method::Rk4).unwrap();
        assert!(!pts.is_empty());
        for (q2, v2) in &pts {
            let section_e = 0.5 * v2 * v2 + u.eval(0.0, *q2).unwrap();
            assert!(section_e <= e0 + 1e-6, "{section_e} > {e0}");
        }
    }

    #[test]
    fn interpolated_crossing_is_near_the_surface() {
        let sk = catalog(Catalog::Sk).unwrap();
        let s0 = State::new(0.0, 0.1, 0.1, 0.05, 0.05);
        let dt = 1e-3;
        let traj = simulate(&sk, &s0, dt, 200.0, Method::Rk4, Frame::Q).unwrap();
        let max_v1 = traj
            .samples
            .iter()
            .map(|s| s.v1.abs())
            .fold(0.0, f64::max);
        // Between bracketing samples |q1| at the interpolated point is
        // bounded by the distance travelled in one step.
        for pair in traj.samples.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if a.q1 * b.q1 < 0.0 {
                let tau = a.q1 / (a.q1 - b.q1);
                let q1 = a.q1 + tau * (b.q1 - a.q1);
                assert!(q1.abs() <= dt * max_v1);
            }
        }
    }
}

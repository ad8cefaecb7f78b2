//! Least-squares fit of a squared norm against `{t^2, t, 1}`.
//!
//! For a potential homogeneous of degree -2 the squared norm of every motion
//! is exactly quadratic in time; the residual of this fit is the evidence.

use crate::error::Error;
use crate::integrate::{Frame, Trajectory};
use alloc::vec::Vec;

/// Which squared norm to fit: `q1^2 + q2^2`, `x^2`, or `y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormComponent {
    Full,
    X,
    Y,
}

/// Coefficients of `s(t) ~ A t^2 + B t + C` and the worst relative
/// deviation of the fit from the data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticLawFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub residual: f64,
}

fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

fn fmax(a: f64, b: f64) -> f64 {
    if a > b {
        a
    } else {
        b
    }
}

/// Solves the 3x3 system `m * sol = rhs` by Gaussian elimination with
/// partial pivoting.
fn solve3(mut m: [[f64; 3]; 3], mut rhs: [f64; 3]) -> Result<[f64; 3], Error> {
    for col in 0..3 {
        let mut pivot = col;
        for row in col + 1..3 {
            if fabs(m[row][col]) > fabs(m[pivot][col]) {
                pivot = row;
            }
        }
        if fabs(m[pivot][col]) < 1e-300 {
            return Err(Error::DegenerateFit);
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let pivot_row = m[col];
        for row in col + 1..3 {
            let factor = m[row][col] / pivot_row[col];
            for (mk, pk) in m[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *mk -= factor * pk;
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut sol = [0.0; 3];
    for col in (0..3).rev() {
        let mut acc = rhs[col];
        for k in col + 1..3 {
            acc -= m[col][k] * sol[k];
        }
        sol[col] = acc / m[col][col];
    }
    Ok(sol)
}

fn component_value(traj: &Trajectory, idx: usize, component: NormComponent) -> f64 {
    let s = &traj.samples[idx];
    match (traj.frame, component) {
        (Frame::Q, NormComponent::Full) => s.q1 * s.q1 + s.q2 * s.q2,
        (Frame::Q, NormComponent::X) => {
            let x = s.q1 + s.q2;
            x * x
        }
        (Frame::Q, NormComponent::Y) => {
            let y = s.q1 - s.q2;
            y * y
        }
        // xy-frame slots hold x, y directly; q1^2 + q2^2 = (x^2 + y^2)/2.
        (Frame::Xy, NormComponent::Full) => (s.q1 * s.q1 + s.q2 * s.q2) / 2.0,
        (Frame::Xy, NormComponent::X) => s.q1 * s.q1,
        (Frame::Xy, NormComponent::Y) => s.q2 * s.q2,
    }
}

/// Fits the chosen squared norm against `{t^2, t, 1}` by least squares on
/// normal equations (in a centered, scaled time variable for conditioning)
/// and reports coefficients in the original time variable.
pub fn fit_quadratic_law(
    traj: &Trajectory,
    component: NormComponent,
) -> Result<QuadraticLawFit, Error> {
    let n = traj.samples.len();
    if n < 3 {
        return Err(Error::DegenerateFit);
    }
    let values: Vec<f64> = (0..n).map(|i| component_value(traj, i, component)).collect();

    let t0 = traj.samples[0].t;
    let t1 = traj.samples[n - 1].t;
    let mid = 0.5 * (t0 + t1);
    let width = fmax(0.5 * (t1 - t0), 1e-12);

    // Accumulate normal equations for the basis {tau^2, tau, 1}.
    let mut pow_sums = [0.0f64; 5];
    let mut rhs = [0.0f64; 3];
    for (s, &v) in traj.samples.iter().zip(&values) {
        let tau = (s.t - mid) / width;
        let tau2 = tau * tau;
        pow_sums[0] += 1.0;
        pow_sums[1] += tau;
        pow_sums[2] += tau2;
        pow_sums[3] += tau2 * tau;
        pow_sums[4] += tau2 * tau2;
        rhs[0] += tau2 * v;
        rhs[1] += tau * v;
        rhs[2] += v;
    }
    let m = [
        [pow_sums[4], pow_sums[3], pow_sums[2]],
        [pow_sums[3], pow_sums[2], pow_sums[1]],
        [pow_sums[2], pow_sums[1], pow_sums[0]],
    ];
    let [pa, pb, pc] = solve3(m, rhs)?;

    // Map s = pa*tau^2 + pb*tau + pc back to t via tau = (t - mid)/width.
    let a = pa / (width * width);
    let b = pb / width - 2.0 * pa * mid / (width * width);
    let c = pa * mid * mid / (width * width) - pb * mid / width + pc;

    let mut residual = 0.0;
    for (s, &v) in traj.samples.iter().zip(&values) {
        let fit = a * s.t * s.t + b * s.t + c;
        residual = fmax(residual, fabs(fit - v) / fmax(fabs(v), 1e-12));
    }
    if !(a.is_finite() && b.is_finite() && c.is_finite() && residual.is_finite()) {
        return Err(Error::Numerical);
    }
    Ok(QuadraticLawFit { a, b, c, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrate::{simulate, Method, State};
    use crate::rat::Rat;
    use crate::system::{catalog, Catalog};

    #[test]
    fn exact_quadratic_data() {
        // Free motion q = (1 + 2t, 3t): ||q||^2 = 13 t^2 + 4 t + 1.
        let free = crate::system::SystemSpec::from_potential(
            "free",
            crate::poly2::Poly2::zero(),
        )
        .unwrap();
        let s0 = State::new(0.0, 1.0, 0.0, 2.0, 3.0);
        let traj = simulate(&free, &s0, 0.01, 5.0, Method::Rk4, Frame::Q).unwrap();
        let fit = fit_quadratic_law(&traj, NormComponent::Full).unwrap();
        assert!((fit.a - 13.0).abs() < 1e-9, "{fit:?}");
        assert!((fit.b - 4.0).abs() < 1e-9);
        assert!((fit.c - 1.0).abs() < 1e-9);
        assert!(fit.residual < 1e-9);
    }

    #[test]
    fn calogero_subsystem_oracle() {
        // f = 1/(4 x^2): x(t) = sqrt(1 + t^2), so x^2 = t^2 + 0t + 1.
        let quarter = Rat::new(1, 4).unwrap();
        let cal = catalog(Catalog::Calogero(quarter, quarter)).unwrap();
        let s0 = State::new(0.0, 1.0, 1.0, 0.0, 0.0);
        let traj = simulate(&cal, &s0, 1e-3, 10.0, Method::Rk4, Frame::Xy).unwrap();
        let fit = fit_quadratic_law(&traj, NormComponent::X).unwrap();
        assert!((fit.a - 1.0).abs() < 1e-8, "{fit:?}");
        assert!(fit.b.abs() < 1e-8);
        assert!((fit.c - 1.0).abs() < 1e-8);
        assert!(fit.residual <= 1e-10, "{}", fit.residual);
    }

    #[test]
    fn sk_is_not_quadratic_in_time() {
        let sk = catalog(Catalog::Sk).unwrap();
        let s0 = State::new(0.0, 0.1, 0.1, 0.0, 0.05);
        let traj = simulate(&sk, &s0, 1e-3, 50.0, Method::Rk4, Frame::Q).unwrap();
        let fit = fit_quadratic_law(&traj, NormComponent::Full).unwrap();
        assert!(fit.residual > 1e-2, "{}", fit.residual);
    }

    #[test]
    fn too_few_samples_is_degenerate() {
        let traj = Trajectory {
            frame: Frame::Q,
            samples: alloc::vec![
                State::new(0.0, 1.0, 0.0, 0.0, 0.0),
                State::new(1.0, 1.0, 0.0, 0.0, 0.0),
            ],
            c1: alloc::vec![0.0, 0.0],
            c2: None,
        };
        assert_eq!(
            fit_quadratic_law(&traj, NormComponent::Full).err(),
            Some(crate::error::Error::DegenerateFit)
        );
    }
}

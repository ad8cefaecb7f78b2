//! Fixed-step integration of the Lagrange equations in either frame,
//! conserved-quantity monitoring, and the frame map
//! `(x, y) = (q1+q2, q1-q2)`.

use crate::error::Error;
use crate::fn1::Fn1;
use crate::system::{accel_q, accel_q_of_xy, accel_xy, SystemForm, SystemSpec};
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// Original coordinates `(q1, q2, v1, v2)`.
    Q,
    /// Separated coordinates; the state slots hold `(x, y, x', y')`.
    Xy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Rk4,
    Verlet,
}

/// Phase-space point. In the `xy` frame the slots hold `x, y, x', y'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub t: f64,
    pub q1: f64,
    pub q2: f64,
    pub v1: f64,
    pub v2: f64,
}

impl State {
    pub fn new(t: f64, q1: f64, q2: f64, v1: f64, v2: f64) -> State {
        State { t, q1, q2, v1, v2 }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite()
            && self.q1.is_finite()
            && self.q2.is_finite()
            && self.v1.is_finite()
            && self.v2.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameDirection {
    QToXy,
    XyToQ,
}

/// Maps a state between frames: `x = q1+q2`, `y = q1-q2` (velocities alike);
/// the inverse halves.
pub fn frame_map(s: &State, direction: FrameDirection) -> State {
    match direction {
        FrameDirection::QToXy => State {
            t: s.t,
            q1: s.q1 + s.q2,
            q2: s.q1 - s.q2,
            v1: s.v1 + s.v2,
            v2: s.v1 - s.v2,
        },
        FrameDirection::XyToQ => State {
            t: s.t,
            q1: (s.q1 + s.q2) / 2.0,
            q2: (s.q1 - s.q2) / 2.0,
            v1: (s.v1 + s.v2) / 2.0,
            v2: (s.v1 - s.v2) / 2.0,
        },
    }
}

/// Acceleration field used by the steppers: positions in, accelerations out.
enum Accel<'a> {
    Q(&'a crate::system::QFrameSystem),
    QOfXy(&'a crate::system::XYFrameSystem),
    Xy(&'a crate::system::XYFrameSystem),
}

impl Accel<'_> {
    fn at(&self, a: f64, b: f64) -> Result<(f64, f64), Error> {
        match self {
            Accel::Q(sys) => accel_q(sys, a, b),
            Accel::QOfXy(sys) => accel_q_of_xy(sys, a, b),
            Accel::Xy(sys) => accel_xy(sys, a, b),
        }
    }

    /// The field the spec induces in the requested frame. A polynomial
    /// system integrated in the separated frame is converted up front by
    /// the caller; this only resolves the native pairings.
    fn resolve<'a>(spec: &'a SystemSpec, frame: Frame) -> Result<Accel<'a>, Error> {
        match (&spec.form, frame) {
            (SystemForm::QFrame(qs), Frame::Q) => Ok(Accel::Q(qs)),
            (SystemForm::XYFrame(xs), Frame::Q) => Ok(Accel::QOfXy(xs)),
            (SystemForm::XYFrame(xs), Frame::Xy) => Ok(Accel::Xy(xs)),
            (SystemForm::QFrame(_), Frame::Xy) => Err(Error::NotSeparable),
        }
    }
}

fn check_state(s: State) -> Result<State, Error> {
    if s.is_finite() {
        Ok(s)
    } else {
        Err(Error::Numerical)
    }
}

fn rk4_step(accel: &Accel<'_>, s: &State, dt: f64) -> Result<State, Error> {
    let (a1, b1) = (s.v1, s.v2);
    let (c1, d1) = accel.at(s.q1, s.q2)?;

    let (a2, b2) = (s.v1 + 0.5 * dt * c1, s.v2 + 0.5 * dt * d1);
    let (c2, d2) = accel.at(s.q1 + 0.5 * dt * a1, s.q2 + 0.5 * dt * b1)?;

    let (a3, b3) = (s.v1 + 0.5 * dt * c2, s.v2 + 0.5 * dt * d2);
    let (c3, d3) = accel.at(s.q1 + 0.5 * dt * a2, s.q2 + 0.5 * dt * b2)?;

    let (a4, b4) = (s.v1 + dt * c3, s.v2 + dt * d3);
    let (c4, d4) = accel.at(s.q1 + dt * a3, s.q2 + dt * b3)?;

    check_state(State {
        t: s.t + dt,
        q1: s.q1 + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4),
        q2: s.q2 + dt / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4),
        v1: s.v1 + dt / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4),
        v2: s.v2 + dt / 6.0 * (d1 + 2.0 * d2 + 2.0 * d3 + d4),
    })
}

fn verlet_step(accel: &Accel<'_>, s: &State, dt: f64) -> Result<State, Error> {
    // kick-drift-kick leapfrog
    let (a0, b0) = accel.at(s.q1, s.q2)?;
    let v1h = s.v1 + 0.5 * dt * a0;
    let v2h = s.v2 + 0.5 * dt * b0;
    let q1 = s.q1 + dt * v1h;
    let q2 = s.q2 + dt * v2h;
    let (a1, b1) = accel.at(q1, q2)?;
    check_state(State {
        t: s.t + dt,
        q1,
        q2,
        v1: v1h + 0.5 * dt * a1,
        v2: v2h + 0.5 * dt * b1,
    })
}

/// One classical fourth-order Runge-Kutta step in the system's native frame.
pub fn step_rk4(spec: &SystemSpec, s: &State, dt: f64) -> Result<State, Error> {
    let frame = match spec.form {
        SystemForm::QFrame(_) => Frame::Q,
        SystemForm::XYFrame(_) => Frame::Xy,
    };
    rk4_step(&Accel::resolve(spec, frame)?, s, dt)
}

/// One kick-drift-kick Verlet step in the system's native frame.
pub fn step_verlet(spec: &SystemSpec, s: &State, dt: f64) -> Result<State, Error> {
    let frame = match spec.form {
        SystemForm::QFrame(_) => Frame::Q,
        SystemForm::XYFrame(_) => Frame::Xy,
    };
    verlet_step(&Accel::resolve(spec, frame)?, s, dt)
}

/// A uniformly sampled run with per-sample conserved quantities.
///
/// In the `q` frame `c1` holds the energy `E` and `c2` the second integral
/// `K` (present only when the system is separable). In the `xy` frame `c1`
/// holds `Ex = x'^2/4 + f(x)` and `c2` holds `Ey = y'^2/4 + g(y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub frame: Frame,
    pub samples: Vec<State>,
    pub c1: Vec<f64>,
    pub c2: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftReport {
    pub max_rel_drift_e: f64,
    /// `None` when the second conserved column is absent.
    pub max_rel_drift_k: Option<f64>,
    pub steps_taken: usize,
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

fn rel_drift(series: &[f64]) -> f64 {
    let v0 = series[0];
    let scale = fmax(fabs(v0), 1e-12);
    let mut worst = 0.0;
    for &v in series {
        worst = fmax(worst, fabs(v - v0) / scale);
    }
    worst
}

/// Conserved-quantity evaluators for one run.
enum Monitors {
    /// E and optionally K for a q-frame run, via `f`, `g` at `x = q1+q2`,
    /// `y = q1-q2` (E = kinetic + f + g, K = v1 v2 + f - g).
    QSeparable { f: Fn1, g: Fn1 },
    /// E only, straight off the polynomial potential.
    QEnergyOnly(crate::poly2::Poly2),
    /// Subsystem energies Ex, Ey for an xy-frame run.
    Xy { f: Fn1, g: Fn1 },
}

impl Monitors {
    fn eval(&self, s: &State) -> Result<(f64, Option<f64>), Error> {
        match self {
            Monitors::QSeparable { f, g } => {
                let fx = f.eval(s.q1 + s.q2)?;
                let gy = g.eval(s.q1 - s.q2)?;
                let e = 0.5 * (s.v1 * s.v1 + s.v2 * s.v2) + fx + gy;
                let k = s.v1 * s.v2 + fx - gy;
                Ok((e, Some(k)))
            }
            Monitors::QEnergyOnly(u) => {
                let e = 0.5 * (s.v1 * s.v1 + s.v2 * s.v2) + u.eval(s.q1, s.q2)?;
                Ok((e, None))
            }
            Monitors::Xy { f, g } => {
                let ex = 0.25 * s.v1 * s.v1 + f.eval(s.q1)?;
                let ey = 0.25 * s.v2 * s.v2 + g.eval(s.q2)?;
                Ok((ex, Some(ey)))
            }
        }
    }
}

/// Integrates from `s0` with a uniform step, sampling every step.
///
/// A polynomial system may be run in the `xy` frame only when it is
/// separable (it is converted exactly); the initial state is interpreted in
/// the requested frame.
pub fn simulate(
    spec: &SystemSpec,
    s0: &State,
    dt: f64,
    t_end: f64,
    method: Method,
    frame: Frame,
) -> Result<Trajectory, Error> {
    let args_ok = dt.is_finite() && dt > 0.0 && t_end.is_finite() && t_end > 0.0;
    if !args_ok || !s0.is_finite() {
        return Err(Error::Numerical);
    }
    // Convert a separable polynomial system for xy-frame runs.
    let converted;
    let run_spec = match (&spec.form, frame) {
        (SystemForm::QFrame(_), Frame::Xy) => {
            converted = SystemSpec {
                name: spec.name.clone(),
                form: SystemForm::XYFrame(spec.to_xy_system()?),
            };
            &converted
        }
        _ => spec,
    };
    let accel = Accel::resolve(run_spec, frame)?;

    let monitors = match frame {
        Frame::Xy => {
            let xs = match &run_spec.form {
                SystemForm::XYFrame(xs) => xs,
                _ => unreachable!(),
            };
            Monitors::Xy {
                f: xs.f.clone(),
                g: xs.g.clone(),
            }
        }
        Frame::Q => match spec.separated_fg() {
            Ok((f, g)) => Monitors::QSeparable { f, g },
            Err(Error::NotSeparable) => match &spec.form {
                SystemForm::QFrame(qs) => Monitors::QEnergyOnly(qs.u.clone()),
                _ => unreachable!(),
            },
            Err(e) => return Err(e),
        },
    };

    let steps = ((t_end / dt) + 0.5) as usize;
    let steps = steps.max(1);
    let mut samples = Vec::with_capacity(steps + 1);
    let mut c1 = Vec::with_capacity(steps + 1);
    let mut c2_values = Vec::new();
    let has_c2 = matches!(monitors, Monitors::QSeparable { .. } | Monitors::Xy { .. });

    let mut s = *s0;
    for k in 0..=steps {
        let (m1, m2) = monitors.eval(&s)?;
        samples.push(s);
        c1.push(m1);
        if let Some(v) = m2 {
            c2_values.push(v);
        }
        if k < steps {
            s = match method {
                Method::Rk4 => rk4_step(&accel, &s, dt)?,
                Method::Verlet => verlet_step(&accel, &s, dt)?,
            };
            // Keep the grid exact in floating point.
            s.t = s0.t + (k as f64 + 1.0) * dt;
        }
    }

    Ok(Trajectory {
        frame,
        samples,
        c1,
        c2: if has_c2 { Some(c2_values) } else { None },
    })
}

/// Worst-case relative drift of each conserved column.
pub fn drift_report(traj: &Trajectory) -> DriftReport {
    DriftReport {
        max_rel_drift_e: rel_drift(&traj.c1),
        max_rel_drift_k: traj.c2.as_deref().map(rel_drift),
        steps_taken: traj.samples.len().saturating_sub(1),
    }
}

/// Pointwise check of the algebraic identities `(E+K)/2 = x'^2/4 + f(x)`
/// and `(E-K)/2 = y'^2/4 + g(y)` along a q-frame trajectory. Returns the
/// max over samples of the summed absolute deviations; this is an exact
/// identity up to rounding, independent of integration accuracy.
pub fn conserved_identity_check(traj: &Trajectory, spec: &SystemSpec) -> Result<f64, Error> {
    if traj.frame != Frame::Q {
        return Err(Error::NotSeparable);
    }
    let (f, g) = spec.separated_fg()?;
    let mut worst = 0.0;
    for s in &traj.samples {
        let xs = frame_map(s, FrameDirection::QToXy);
        let fx = f.eval(xs.q1)?;
        let gy = g.eval(xs.q2)?;
        let e = 0.5 * (s.v1 * s.v1 + s.v2 * s.v2) + fx + gy;
        let k = s.v1 * s.v2 + fx - gy;
        let ex = 0.25 * xs.v1 * xs.v1 + fx;
        let ey = 0.25 * xs.v2 * xs.v2 + gy;
        let dev = fabs((e + k) / 2.0 - ex) + fabs((e - k) / 2.0 - ey);
        worst = fmax(worst, dev);
    }
    Ok(worst)
}

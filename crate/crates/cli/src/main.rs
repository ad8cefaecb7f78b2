//! `seplag` — analyze and simulate two-degree-of-freedom Lagrangian systems
//! whose potential splits as `f(q1+q2) + g(q1-q2)`.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use seplag_core::{
    catalog, decompose, drift_report, fit_quadratic_law, parse_potential, parse_rat,
    poincare_section, second_integral, separated_forces, simulate, Catalog, Error as CoreError,
    Frame, Method, NormComponent, Poly1, SeparationResult, State, SystemForm, SystemSpec,
    Trajectory,
};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NOT_SEPARABLE: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "seplag",
    about = "Separable Lagrangian systems: separability analysis, companion potentials, and fixed-step dynamics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide separability and report f, g, the companion potential, and K
    Check(SystemArgs),
    /// Integrate and write a CSV trajectory with conserved columns
    Simulate(RunArgs),
    /// Integrate and report the relative drift of the conserved quantities
    Drift(RunArgs),
    /// Collect Poincare section points on q1 = 0, v1 > 0 and write q2,v2 CSV
    Section(RunArgs),
    /// Fit the squared norm against {t^2, t, 1} and report A, B, C, residual
    Fitlaw(FitArgs),
}

#[derive(Args)]
struct SystemArgs {
    /// Catalog system: sk, harmonic, hh:b=<rat>, calogero:af=<rat>,ag=<rat>
    #[arg(long)]
    system: Option<String>,
    /// Potential expression over q1, q2, e.g. "1/2*(q1^2+q2^2)+q1*q2"
    #[arg(long, allow_hyphen_values = true)]
    potential: Option<String>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Initial q1 (x when --frame xy)
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    q1: f64,
    /// Initial q2 (y when --frame xy)
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    q2: f64,
    /// Initial v1 (x' when --frame xy)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    v1: f64,
    /// Initial v2 (y' when --frame xy)
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    v2: f64,
    /// Time step
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Final time
    #[arg(long = "t-end", default_value_t = 100.0)]
    t_end: f64,
    /// Integrator
    #[arg(long, value_enum, default_value_t = MethodArg::Rk4)]
    method: MethodArg,
    /// Integration frame
    #[arg(long, value_enum, default_value_t = FrameArg::Q)]
    frame: FrameArg,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Squared norm to fit: the full q1^2+q2^2, or a single x^2 / y^2
    #[arg(long, value_enum, default_value_t = ComponentArg::Full)]
    component: ComponentArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Rk4,
    Verlet,
}

#[derive(Clone, Copy, ValueEnum)]
enum FrameArg {
    Q,
    Xy,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComponentArg {
    Full,
    X,
    Y,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Rk4 => Method::Rk4,
            MethodArg::Verlet => Method::Verlet,
        }
    }
}

impl From<FrameArg> for Frame {
    fn from(f: FrameArg) -> Frame {
        match f {
            FrameArg::Q => Frame::Q,
            FrameArg::Xy => Frame::Xy,
        }
    }
}

impl From<ComponentArg> for NormComponent {
    fn from(c: ComponentArg) -> NormComponent {
        match c {
            ComponentArg::Full => NormComponent::Full,
            ComponentArg::X => NormComponent::X,
            ComponentArg::Y => NormComponent::Y,
        }
    }
}

/// A failure with an assigned process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        let code = match &e {
            CoreError::Parse(_) | CoreError::ZeroDenominator | CoreError::Overflow => EXIT_PARSE,
            CoreError::NotSeparable => EXIT_NOT_SEPARABLE,
            CoreError::Singularity | CoreError::Numerical | CoreError::DegenerateFit => {
                EXIT_NUMERICAL
            }
        };
        Failure { code, message: e.to_string() }
    }
}

fn parse_system_selector(text: &str) -> Result<SystemSpec, Failure> {
    let (name, params) = match text.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (text, None),
    };
    let selector = match (name, params) {
        ("sk", None) => Catalog::Sk,
        ("harmonic", None) => Catalog::Harmonic,
        ("hh", Some(p)) => {
            let b = p
                .strip_prefix("b=")
                .ok_or_else(|| Failure::usage(format!("expected hh:b=<rat>, got `{text}`")))?;
            Catalog::Hh(parse_rat(b).map_err(Failure::from)?)
        }
        ("calogero", Some(p)) => {
            let mut af = None;
            let mut ag = None;
            for piece in p.split(',') {
                if let Some(v) = piece.strip_prefix("af=") {
                    af = Some(parse_rat(v).map_err(Failure::from)?);
                } else if let Some(v) = piece.strip_prefix("ag=") {
                    ag = Some(parse_rat(v).map_err(Failure::from)?);
                } else {
                    return Err(Failure::usage(format!(
                        "expected calogero:af=<rat>,ag=<rat>, got `{text}`"
                    )));
                }
            }
            match (af, ag) {
                (Some(af), Some(ag)) => Catalog::Calogero(af, ag),
                _ => {
                    return Err(Failure::usage(format!(
                        "calogero needs both af and ag, got `{text}`"
                    )))
                }
            }
        }
        _ => {
            return Err(Failure::usage(format!(
                "unknown system `{text}` (try sk, harmonic, hh:b=<rat>, calogero:af=<rat>,ag=<rat>)"
            )))
        }
    };
    catalog(selector).map_err(Failure::from)
}

fn resolve_system(args: &SystemArgs) -> Result<SystemSpec, Failure> {
    match (&args.system, &args.potential) {
        (Some(s), None) => parse_system_selector(s),
        (None, Some(p)) => {
            let u = parse_potential(p)?;
            SystemSpec::from_potential("potential", u).map_err(Failure::from)
        }
        _ => Err(Failure::usage(
            "exactly one of --system / --potential is required",
        )),
    }
}

/// Round-trip-exact rendering for CSV (17 significant digits).
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn open_output(path: &Option<String>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_failure(e: io::Error) -> Failure {
    Failure { code: EXIT_NUMERICAL, message: format!("output error: {e}") }
}

fn cmd_check(args: &SystemArgs) -> Result<(), Failure> {
    let spec = resolve_system(args)?;
    match &spec.form {
        SystemForm::QFrame(qs) => match decompose(&qs.u)? {
            SeparationResult::Separable { f, g } => {
                let k = second_integral(&qs.u)?;
                let (fx, fy) = separated_forces(&f, &g)?;
                println!("system: {}", spec.name);
                println!("separable: yes");
                println!("U = {}", qs.u);
                println!("f = {}", f.to_string_with("x"));
                println!("g = {}", g.to_string_with("y"));
                println!("Utilde = {}", k.potential);
                print_k(&k.potential);
                print_separated(&fx, &fy);
                Ok(())
            }
            SeparationResult::NotSeparable { obstructions } => {
                println!("system: {}", spec.name);
                println!("separable: no");
                println!("obstructing mixed monomials of U(x,y):");
                for o in &obstructions {
                    println!(
                        "  x^{}*y^{}: {}",
                        o.x_exp, o.y_exp, o.coeff
                    );
                }
                Err(Failure {
                    code: EXIT_NOT_SEPARABLE,
                    message: "potential is not separable".into(),
                })
            }
        },
        SystemForm::XYFrame(xs) => {
            // Separated by construction; report the given f, g.
            println!("system: {}", spec.name);
            println!("separable: yes (given in separated form)");
            println!("f = {}", xs.f.to_string_with("x"));
            println!("g = {}", xs.g.to_string_with("y"));
            let neg2 = seplag_core::Rat::from_int(-2);
            let fx = xs.f.derivative()?.scale(neg2)?;
            let fy = xs.g.derivative()?.scale(neg2)?;
            println!("x'' = {}", fx.to_string_with("x"));
            println!("y'' = {}", fy.to_string_with("y"));
            Ok(())
        }
    }
}

fn print_k(potential: &seplag_core::Poly2) {
    let body = potential.to_string_with("q1", "q2");
    if body == "0" {
        println!("K = v1*v2");
    } else if let Some(rest) = body.strip_prefix('-') {
        println!("K = v1*v2 - {rest}");
    } else {
        println!("K = v1*v2 + {body}");
    }
}

fn print_separated(fx: &Poly1, fy: &Poly1) {
    println!("x'' = {}", fx.to_string_with("x"));
    println!("y'' = {}", fy.to_string_with("y"));
}

fn run_trajectory(args: &RunArgs) -> Result<(SystemSpec, Trajectory), Failure> {
    if !(args.dt.is_finite() && args.dt > 0.0) || args.t_end < args.dt {
        return Err(Failure::usage("need --dt > 0 and --t-end >= --dt"));
    }
    let spec = resolve_system(&args.system)?;
    let s0 = State::new(0.0, args.q1, args.q2, args.v1, args.v2);
    let traj = simulate(
        &spec,
        &s0,
        args.dt,
        args.t_end,
        args.method.into(),
        args.frame.into(),
    )?;
    Ok((spec, traj))
}

fn cmd_simulate(args: &RunArgs) -> Result<(), Failure> {
    let (_, traj) = run_trajectory(args)?;
    let mut out = open_output(&args.out).map_err(write_failure)?;
    let write = |out: &mut Box<dyn Write>| -> io::Result<()> {
        match (traj.frame, traj.c2.is_some()) {
            (Frame::Q, true) => writeln!(out, "t,q1,q2,v1,v2,E,K")?,
            (Frame::Q, false) => writeln!(out, "t,q1,q2,v1,v2,E")?,
            (Frame::Xy, _) => writeln!(out, "t,x,y,vx,vy,Ex,Ey")?,
        }
        for (i, s) in traj.samples.iter().enumerate() {
            write!(
                out,
                "{},{},{},{},{},{}",
                fmt_f64(s.t),
                fmt_f64(s.q1),
                fmt_f64(s.q2),
                fmt_f64(s.v1),
                fmt_f64(s.v2),
                fmt_f64(traj.c1[i])
            )?;
            if let Some(c2) = &traj.c2 {
                write!(out, ",{}", fmt_f64(c2[i]))?;
            }
            writeln!(out)?;
        }
        out.flush()
    };
    write(&mut out).map_err(write_failure)
}

fn cmd_drift(args: &RunArgs) -> Result<(), Failure> {
    let (_, traj) = run_trajectory(args)?;
    let report = drift_report(&traj);
    let mut out = open_output(&args.out).map_err(write_failure)?;
    let write = |out: &mut Box<dyn Write>| -> io::Result<()> {
        writeln!(out, "maxRelDriftE = {}", fmt_f64(report.max_rel_drift_e))?;
        match report.max_rel_drift_k {
            Some(k) => writeln!(out, "maxRelDriftK = {}", fmt_f64(k))?,
            None => writeln!(out, "maxRelDriftK = n/a (no second integral)")?,
        }
        writeln!(out, "steps = {}", report.steps_taken)?;
        out.flush()
    };
    write(&mut out).map_err(write_failure)
}

fn cmd_section(args: &RunArgs) -> Result<(), Failure> {
    if !matches!(args.frame, FrameArg::Q) {
        return Err(Failure::usage("section requires --frame q"));
    }
    if !(args.dt.is_finite() && args.dt > 0.0) || args.t_end < args.dt {
        return Err(Failure::usage("need --dt > 0 and --t-end >= --dt"));
    }
    let spec = resolve_system(&args.system)?;
    let s0 = State::new(0.0, args.q1, args.q2, args.v1, args.v2);
    let points = poincare_section(&spec, &[s0], args.dt, args.t_end, args.method.into())?;
    let mut out = open_output(&args.out).map_err(write_failure)?;
    let write = |out: &mut Box<dyn Write>| -> io::Result<()> {
        writeln!(out, "q2,v2")?;
        for (q2, v2) in &points {
            writeln!(out, "{},{}", fmt_f64(*q2), fmt_f64(*v2))?;
        }
        out.flush()
    };
    write(&mut out).map_err(write_failure)
}

fn cmd_fitlaw(args: &FitArgs) -> Result<(), Failure> {
    let (_, traj) = run_trajectory(&args.run)?;
    let fit = fit_quadratic_law(&traj, args.component.into())?;
    let mut out = open_output(&args.run.out).map_err(write_failure)?;
    let write = |out: &mut Box<dyn Write>| -> io::Result<()> {
        writeln!(out, "A = {}", fmt_f64(fit.a))?;
        writeln!(out, "B = {}", fmt_f64(fit.b))?;
        writeln!(out, "C = {}", fmt_f64(fit.c))?;
        writeln!(out, "residual = {}", fmt_f64(fit.residual))?;
        out.flush()
    };
    write(&mut out).map_err(write_failure)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    return ExitCode::SUCCESS;
                }
                _ => {
                    eprint!("{e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            }
        }
    };
    let result = match &cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Drift(args) => cmd_drift(args),
        Command::Section(args) => cmd_section(args),
        Command::Fitlaw(args) => cmd_fitlaw(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

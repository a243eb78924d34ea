// Copyright 2026 The sg-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! `sg-lab` command dispatch.
//!
//! Exit codes: 0 success, 2 input or validation error, 3 I/O failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use sg_lab::hopf::{
    fiber_sample, h_map, hopf_projection, stereographic, stereographic_inverse, PlanePoint,
    SpherePoint, SpinorPair,
};
use sg_lab::io::{
    chain_csv, parse_plan, parse_preparations, parse_table_csv, report_json, round_sig, sweep_csv,
    table_csv, CSV_DISTRIBUTION_TOLERANCE,
};
use sg_lab::qubit::{Direction, Port};
use sg_lab::simulator::{simulate_chain, sweep_angle};
use sg_lab::witness::{
    analytic_table, sampled_table, WitnessKind, WitnessReport, ANALYTIC_TOLERANCE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Deviation from unit norm tolerated silently on geometry inputs.
pub const HOPF_NORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "sg-lab",
    version,
    about = "Stern-Gerlach prepare-and-measure laboratory"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a Stern-Gerlach chain from a TOML plan and write per-stage counts.
    Simulate {
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweep the angle between preparing and measuring magnets.
    Sweep(SweepArgs),
    /// Evaluate a dimension witness on a probability table.
    Witness(WitnessArgs),
    /// Hopf map, fibres and stereographic projection.
    Hopf {
        #[command(subcommand)]
        command: HopfCommand,
    },
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    /// Polar angle of the preparing magnet, radians.
    #[arg(long)]
    prep_theta: f64,
    /// Azimuth of the preparing magnet, radians.
    #[arg(long)]
    prep_phi: f64,
    /// First angle between the magnets, radians.
    #[arg(long)]
    start: f64,
    /// Last angle between the magnets, radians.
    #[arg(long)]
    end: f64,
    #[arg(long)]
    steps: usize,
    /// Particles per angle.
    #[arg(long)]
    particles: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    #[value(name = "U")]
    U,
    #[value(name = "W")]
    W,
}

impl From<KindArg> for WitnessKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::U => WitnessKind::U,
            KindArg::W => WitnessKind::W,
        }
    }
}

#[derive(Debug, Args)]
struct WitnessArgs {
    /// Probability table CSV.
    #[arg(
        long,
        conflicts_with = "from_plans",
        required_unless_present = "from_plans"
    )]
    table: Option<PathBuf>,
    /// TOML list of preparations; the table is generated from it.
    #[arg(long)]
    from_plans: Option<PathBuf>,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Number of preparations N (required with --table).
    #[arg(long)]
    n_preps: Option<usize>,
    /// Slack allowed when comparing the witness with each bound.
    #[arg(long, default_value_t = ANALYTIC_TOLERANCE)]
    tolerance: f64,
    /// Report JSON.
    #[arg(long)]
    out: PathBuf,
    /// Also write the generated table (with --from-plans).
    #[arg(long, requires = "from_plans")]
    table_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum Chart {
    /// Closed form (2 Re(b a*), 2 Im(b a*), |b|² − |a|²).
    #[default]
    Direct,
    /// Stereographic inverse of h(a, b) = b/a.
    H,
}

#[derive(Debug, Subcommand)]
#[command(allow_negative_numbers = true)]
enum HopfCommand {
    /// Project a spinor (a_re a_im b_re b_im) to the sphere.
    #[command(allow_negative_numbers = true)]
    Project {
        #[arg(num_args = 4, value_names = ["A_RE", "A_IM", "B_RE", "B_IM"], required = true)]
        spinor: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Chart::Direct)]
        chart: Chart,
    },
    /// Sample the fibre over a sphere point (x1 x2 x3).
    #[command(allow_negative_numbers = true)]
    Fiber {
        #[arg(num_args = 3, value_names = ["X1", "X2", "X3"], required = true)]
        point: Vec<f64>,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Stereographic projection of a sphere point (x1 x2 x3), or with
    /// --inverse the sphere point of a plane point (X Y).
    #[command(allow_negative_numbers = true)]
    Stereo {
        #[arg(num_args = 2..=3, required = true)]
        coords: Vec<f64>,
        #[arg(long)]
        inverse: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Io(m) => m,
        }
    }
}

impl From<sg_lab::Error> for CliError {
    fn from(e: sg_lab::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn input(path: &Path, e: sg_lab::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return if code == 0 { EXIT_OK } else { EXIT_INPUT };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    match cmd {
        Command::Simulate { plan, out } => cmd_simulate(&plan, &out),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Witness(args) => cmd_witness(&args),
        Command::Hopf { command } => cmd_hopf(command, stdout, stderr),
    }
}

fn cmd_simulate(plan_path: &Path, out: &Path) -> CliResult<()> {
    let text = read(plan_path)?;
    let plan = parse_plan(&text).map_err(|e| input(plan_path, e))?;
    let record = simulate_chain(&plan);
    write(out, &chain_csv(&record))
}

fn sweep_angles(start: f64, end: f64, steps: usize) -> CliResult<Vec<f64>> {
    if !(start.is_finite() && end.is_finite()) || start >= end {
        return Err(CliError::Input(format!(
            "need finite --start < --end, got {start} and {end}"
        )));
    }
    if steps < 2 {
        return Err(CliError::Input(format!(
            "--steps must be at least 2, got {steps}"
        )));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                end
            } else {
                start + (end - start) * (i as f64 / last)
            }
        })
        .collect())
}

fn cmd_sweep(args: &SweepArgs) -> CliResult<()> {
    let angles = sweep_angles(args.start, args.end, args.steps)?;
    if args.particles == 0 {
        return Err(CliError::Input("--particles must be at least 1".into()));
    }
    let prep = Direction::new(args.prep_theta, args.prep_phi)?;
    let rows = sweep_angle(
        (prep, Port::Plus),
        Port::Plus,
        &angles,
        args.particles,
        args.seed,
    )?;
    write(&args.out, &sweep_csv(&rows))
}

fn cmd_witness(args: &WitnessArgs) -> CliResult<()> {
    let kind = WitnessKind::from(args.kind);
    if !(args.tolerance.is_finite() && args.tolerance >= 0.0) {
        return Err(CliError::Input(format!(
            "--tolerance must be finite and non-negative, got {}",
            args.tolerance
        )));
    }
    let table = if let Some(path) = &args.table {
        let n = args
            .n_preps
            .ok_or_else(|| CliError::Input("--n-preps is required with --table".into()))?;
        let text = read(path)?;
        parse_table_csv(&text, kind, n, CSV_DISTRIBUTION_TOLERANCE).map_err(|e| input(path, e))?
    } else {
        let path = args.from_plans.as_ref().expect("clap enforces one source");
        let list = parse_preparations(&read(path)?).map_err(|e| input(path, e))?;
        if let Some(n) = args.n_preps {
            if n != list.preparations.len() {
                return Err(CliError::Input(format!(
                    "--n-preps {n} does not match the {} preparations in {}",
                    list.preparations.len(),
                    path.display()
                )));
            }
        }
        let table = match list.n_particles {
            None => analytic_table(&list.preparations, kind)?,
            Some(n) => sampled_table(&list.preparations, kind, n, list.seed)?,
        };
        // The report is computed from the table exactly as written.
        let table = table.map_probabilities(round_sig);
        if let Some(out) = &args.table_out {
            write(out, &table_csv(&table))?;
        }
        table
    };
    let report = WitnessReport::analyze(&table, args.tolerance)?;
    write(&args.out, &report_json(&report))
}

fn num(x: f64) -> Value {
    json!(round_sig(x))
}

fn print_json(stdout: &mut dyn Write, v: &Value) -> CliResult<()> {
    let text = serde_json::to_string(v).expect("JSON values serialize");
    writeln!(stdout, "{text}").map_err(|e| CliError::Io(e.to_string()))
}

fn check_finite(values: &[f64]) -> CliResult<()> {
    match values.iter().find(|v| !v.is_finite()) {
        Some(v) => Err(CliError::Input(format!("{v} is not a finite number"))),
        None => Ok(()),
    }
}

fn warn_norm(stderr: &mut dyn Write, what: &str, norm: f64) {
    if (norm - 1.0).abs() > HOPF_NORM_TOLERANCE {
        let _ = writeln!(stderr, "warning: {what} has norm {norm}; renormalized");
    }
}

fn sphere_input(v: &[f64], stderr: &mut dyn Write) -> CliResult<SpherePoint> {
    check_finite(v)?;
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let p = SpherePoint::normalized(v[0], v[1], v[2])?;
    warn_norm(stderr, "sphere point", norm);
    Ok(p)
}

fn cmd_hopf(cmd: HopfCommand, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    match cmd {
        HopfCommand::Project { spinor, chart } => {
            check_finite(&spinor)?;
            let a = Complex64::new(spinor[0], spinor[1]);
            let b = Complex64::new(spinor[2], spinor[3]);
            let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let p = SpinorPair::normalized(a, b)?;
            warn_norm(stderr, "spinor", norm);
            let s = match chart {
                Chart::Direct => hopf_projection(&p),
                Chart::H => stereographic_inverse(&h_map(&p)?),
            };
            print_json(
                stdout,
                &json!({ "x1": num(s.x1), "x2": num(s.x2), "x3": num(s.x3) }),
            )
        }
        HopfCommand::Fiber { point, n } => {
            let target = sphere_input(&point, stderr)?;
            let pairs = fiber_sample(&target, n)?;
            let list: Vec<Value> = pairs
                .iter()
                .map(|p| {
                    json!({
                        "a_re": num(p.a().re),
                        "a_im": num(p.a().im),
                        "b_re": num(p.b().re),
                        "b_im": num(p.b().im),
                    })
                })
                .collect();
            print_json(stdout, &Value::Array(list))
        }
        HopfCommand::Stereo { coords, inverse } => {
            if inverse {
                if coords.len() != 2 {
                    return Err(CliError::Input("--inverse takes two numbers: X Y".into()));
                }
                check_finite(&coords)?;
                let s =
                    stereographic_inverse(&PlanePoint::new(Complex64::new(coords[0], coords[1]))?);
                print_json(
                    stdout,
                    &json!({ "x1": num(s.x1), "x2": num(s.x2), "x3": num(s.x3) }),
                )
            } else {
                if coords.len() != 3 {
                    return Err(CliError::Input(
                        "stereo takes three numbers: X1 X2 X3".into(),
                    ));
                }
                let p = sphere_input(&coords, stderr)?;
                let z = stereographic(&p)?;
                print_json(stdout, &json!({ "re": num(z.z.re), "im": num(z.z.im) }))
            }
        }
    }
}

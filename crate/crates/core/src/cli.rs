//! Command-line front end: Wigner angles, scenario runs and the two figure
//! sweeps, written as CSV or JSON.
//!
//! Data streams are deterministic for fixed flags. CSV output may start with
//! metadata lines prefixed `#`; JSON carries data only.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::{Matrix4, Vector3};
use num_complex::Complex64;
use serde_json::{Map, Number, Value};

use crate::error::Error;
use crate::lorentz::rotation_angle_about;
use crate::scenario::{
    self, boost_y, figure1_curve, figure2_curve, initial_pure_state, velocity_grid, ScenarioConfig,
    StateKind,
};
use crate::spin_half::BellSign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for BellSign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => BellSign::Plus,
            SignArg::Minus => BellSign::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateArg {
    Pure,
    Mixed,
}

impl From<StateArg> for StateKind {
    fn from(s: StateArg) -> Self {
        match s {
            StateArg::Pure => StateKind::Pure,
            StateArg::Mixed => StateKind::Mixed,
        }
    }
}

/// Parsed command line.
#[derive(Debug, Clone, Parser)]
#[command(
    name = "relspin",
    version,
    about = "Wigner rotations and boost-induced spin/momentum entanglement of two spin-1/2 particles"
)]
pub struct RunSpec {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Decimal places for every number.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(1..=17), global = true)]
    pub precision: u8,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Wigner angle for momentum |p|/m along x and a boost v along y.
    Wigner(WignerArgs),
    /// Boost the two-branch state and report spin and momentum entanglement.
    Run(RunArgs),
    /// Boost speed giving a π/4 Wigner angle, swept over |p|/m.
    Figure1(Figure1Args),
    /// Spin concurrence against boost speed at fixed |p|/m.
    Figure2(Figure2Args),
}

#[derive(Debug, Clone, Args)]
pub struct WignerArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub ratio: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub v: f64,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub ratio: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub v: f64,
    #[arg(long, value_enum, default_value_t = SignArg::Minus)]
    pub bell: SignArg,
    #[arg(long, value_enum, default_value_t = StateArg::Pure)]
    pub state: StateArg,
    #[arg(long = "momentum-bell", value_enum, default_value_t = SignArg::Plus)]
    pub momentum_bell: SignArg,
}

#[derive(Debug, Clone, Args)]
pub struct Figure1Args {
    #[arg(long = "ratio-min", default_value_t = scenario::FIGURE1_RATIO_MIN, allow_negative_numbers = true)]
    pub ratio_min: f64,
    #[arg(long = "ratio-max", default_value_t = scenario::FIGURE1_RATIO_MAX, allow_negative_numbers = true)]
    pub ratio_max: f64,
    #[arg(long, default_value_t = scenario::FIGURE1_SAMPLES)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct Figure2Args {
    #[arg(long, default_value_t = scenario::FIGURE2_RATIO, allow_negative_numbers = true)]
    pub ratio: f64,
    #[arg(long = "v-max", default_value_t = scenario::FIGURE2_V_MAX, allow_negative_numbers = true)]
    pub v_max: f64,
    #[arg(long, default_value_t = scenario::FIGURE2_SAMPLES)]
    pub samples: usize,
}

/// Failure of a CLI invocation with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Range or usage problem (exit code 2).
    Usage(String),
    /// Broken internal invariant or I/O failure (exit code 1).
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Num(f64),
    Bool(bool),
    Text(String),
    Missing,
}

/// A table rendered either as CSV or as JSON.
#[derive(Debug, Clone)]
struct Table {
    comments: Vec<String>,
    headers: Vec<String>,
    rows: Vec<Vec<Cell>>,
    /// Single-record tables become a JSON object instead of an array.
    single: bool,
}

/// Fixed-point text with `precision` decimals; negative zero prints unsigned.
fn format_number(x: f64, precision: usize) -> String {
    let s = format!("{:.*}", precision, x);
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

impl Table {
    fn cell_text(cell: &Cell, precision: usize) -> String {
        match cell {
            Cell::Num(x) => format_number(*x, precision),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(t) => t.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn to_csv(&self, precision: usize) -> Result<String, CliError> {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io_err = |e: csv::Error| CliError::Internal(e.to_string());
        writer.write_record(&self.headers).map_err(io_err)?;
        for row in &self.rows {
            writer
                .write_record(row.iter().map(|c| Self::cell_text(c, precision)))
                .map_err(io_err)?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| CliError::Internal(e.to_string()))?;
        out.push_str(&String::from_utf8_lossy(&bytes));
        Ok(out)
    }

    fn cell_json(cell: &Cell, precision: usize) -> Value {
        match cell {
            Cell::Num(x) => format_number(*x, precision)
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(t) => Value::String(t.clone()),
            Cell::Missing => Value::Null,
        }
    }

    fn to_json(&self, precision: usize) -> Result<String, CliError> {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> = self
                    .headers
                    .iter()
                    .cloned()
                    .zip(row.iter().map(|c| Self::cell_json(c, precision)))
                    .collect();
                Value::Object(map)
            })
            .collect();
        let value = if self.single && records.len() == 1 {
            records.into_iter().next().unwrap_or(Value::Null)
        } else {
            Value::Array(records)
        };
        let mut text =
            serde_json::to_string_pretty(&value).map_err(|e| CliError::Internal(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }

    fn render(&self, format: Format, precision: usize) -> Result<String, CliError> {
        match format {
            Format::Csv => self.to_csv(precision),
            Format::Json => self.to_json(precision),
        }
    }
}

fn sign_name(s: BellSign) -> &'static str {
    match s {
        BellSign::Plus => "plus",
        BellSign::Minus => "minus",
    }
}

fn wigner_table(args: &WignerArgs) -> Result<Table, CliError> {
    let phi = scenario::wigner_angle(args.ratio, args.v)?;
    let lambda = boost_y(args.v)?;
    let state = initial_pure_state(args.ratio, BellSign::Minus, BellSign::Plus)?;
    let rotations = state.wigner_rotations(&lambda)?;
    let z = Vector3::z();
    let mut branch_angles = Vec::with_capacity(4);
    for (w_a, w_b) in &rotations {
        branch_angles.push(rotation_angle_about(w_a, &z)?);
        branch_angles.push(rotation_angle_about(w_b, &z)?);
    }
    let axis = if phi == 0.0 { z } else { rotations[0].0.axis() };

    let headers = [
        "p_over_m", "v", "phi_rad", "phi_deg", "axis_x", "axis_y", "axis_z", "phi_a1", "phi_b1",
        "phi_a2", "phi_b2",
    ];
    let mut row = vec![
        Cell::Num(args.ratio),
        Cell::Num(args.v),
        Cell::Num(phi),
        Cell::Num(phi.to_degrees()),
        Cell::Num(axis.x),
        Cell::Num(axis.y),
        Cell::Num(axis.z),
    ];
    row.extend(branch_angles.into_iter().map(Cell::Num));
    Ok(Table {
        comments: vec![format!(
            "wigner: rotation about z for |p|/m={} along x, boost v={} along y",
            args.ratio, args.v
        )],
        headers: headers.iter().map(|h| h.to_string()).collect(),
        rows: vec![row],
        single: true,
    })
}

fn push_density(
    headers: &mut Vec<String>,
    row: &mut Vec<Cell>,
    name: &str,
    m: &Matrix4<Complex64>,
) {
    for r in 0..4 {
        for c in 0..4 {
            headers.push(format!("{name}_{r}{c}_re"));
            headers.push(format!("{name}_{r}{c}_im"));
            row.push(Cell::Num(m[(r, c)].re));
            row.push(Cell::Num(m[(r, c)].im));
        }
    }
}

fn run_table(args: &RunArgs) -> Result<Table, CliError> {
    let config = ScenarioConfig {
        momentum_ratio: args.ratio,
        boost_speed: args.v,
        bell_sign: args.bell.into(),
        state_kind: args.state.into(),
        momentum_bell_sign: args.momentum_bell.into(),
    };
    let result = scenario::run(&config)?;

    let mut headers: Vec<String> = [
        "p_over_m",
        "v",
        "bell",
        "state",
        "momentum_bell",
        "phi",
        "concurrence_spin",
        "concurrence_momentum",
    ]
    .iter()
    .map(|h| h.to_string())
    .collect();
    let mut row = vec![
        Cell::Num(args.ratio),
        Cell::Num(args.v),
        Cell::Text(sign_name(config.bell_sign).into()),
        Cell::Text(match config.state_kind {
            StateKind::Pure => "pure".into(),
            StateKind::Mixed => "mixed".into(),
        }),
        Cell::Text(sign_name(config.momentum_bell_sign).into()),
        Cell::Num(result.wigner_angle),
        Cell::Num(result.concurrence_spin),
        Cell::Num(result.concurrence_momentum),
    ];
    for (name, spectrum) in [
        ("ppt_spin", result.ppt_spin),
        ("ppt_momentum", result.ppt_momentum),
    ] {
        for (k, x) in spectrum.values().iter().enumerate() {
            headers.push(format!("{name}_{}", k + 1));
            row.push(Cell::Num(*x));
        }
    }
    headers.push("separable_spin".into());
    row.push(Cell::Bool(result.separable_spin));
    headers.push("separable_momentum".into());
    row.push(Cell::Bool(result.separable_momentum));
    headers.push("overlap_re".into());
    headers.push("overlap_im".into());
    match result.branch_overlap {
        Some(z) => {
            row.push(Cell::Num(z.re));
            row.push(Cell::Num(z.im));
        }
        None => {
            row.push(Cell::Missing);
            row.push(Cell::Missing);
        }
    }
    push_density(
        &mut headers,
        &mut row,
        "spin",
        result.spin_density_after.matrix(),
    );
    push_density(
        &mut headers,
        &mut row,
        "momentum",
        result.momentum_density_after.density().matrix(),
    );

    Ok(Table {
        comments: vec![format!(
            "run: densities row-major in basis |++>,|+->,|-+>,|--> (momentum: |p_A1 p_B1>, ..., |p_A2 p_B2>); ratio={} v={}",
            args.ratio, args.v
        )],
        headers,
        rows: vec![row],
        single: true,
    })
}

fn figure1_table(args: &Figure1Args) -> Result<Table, CliError> {
    let rows = figure1_curve(args.ratio_min, args.ratio_max, args.samples)?;
    Ok(Table {
        comments: vec![format!(
            "figure1: boost speed giving a pi/4 Wigner rotation; {} log-spaced ratios in [{}, {}]",
            args.samples, args.ratio_min, args.ratio_max
        )],
        headers: vec!["p_over_m".into(), "v".into()],
        rows: rows
            .iter()
            .map(|r| vec![Cell::Num(r.momentum_ratio), Cell::Num(r.velocity)])
            .collect(),
        single: false,
    })
}

fn figure2_table(args: &Figure2Args) -> Result<Table, CliError> {
    let grid = velocity_grid(args.v_max, args.samples)?;
    let rows = figure2_curve(args.ratio, &grid)?;
    Ok(Table {
        comments: vec![format!(
            "figure2: spin concurrence vs boost speed; |p|/m={}, {} speeds in [0, {}]",
            args.ratio, args.samples, args.v_max
        )],
        headers: vec!["v".into(), "concurrence".into()],
        rows: rows
            .iter()
            .map(|r| vec![Cell::Num(r.velocity), Cell::Num(r.concurrence)])
            .collect(),
        single: false,
    })
}

/// Runs the parsed command and returns the rendered output.
pub fn execute(spec: &RunSpec) -> Result<String, CliError> {
    let table = match &spec.command {
        Command::Wigner(args) => wigner_table(args)?,
        Command::Run(args) => run_table(args)?,
        Command::Figure1(args) => figure1_table(args)?,
        Command::Figure2(args) => figure2_table(args)?,
    };
    table.render(spec.format, spec.precision as usize)
}

/// Executes and writes the output; returns the process exit code.
pub fn run_cli(spec: &RunSpec) -> i32 {
    let outcome = execute(spec).and_then(|text| match &spec.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Internal(e.to_string())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Internal(e.to_string())),
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

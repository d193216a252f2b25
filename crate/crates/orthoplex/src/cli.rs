//! Batch command-line front end.
//!
//! Every library operation is exposed as a subcommand that emits a
//! deterministic table, CSV by default or JSON with `--format json`.
//! Exact counts are serialized as full decimal strings (never floats),
//! rationals as "numerator/denominator", and reals in scientific notation
//! with 17 significant digits.  Identical invocations produce
//! byte-identical output; randomized subcommands take an explicit
//! `--seed`.
//!
//! Sweep flags (`--d`, `--n`, and friends) accept a single value `5`, an
//! inclusive range `1..300`, or a stepped range `1..300:3`; `--n-of`
//! derives the radius from the dimension instead (`sqrt`, `linear`,
//! `pow32` for d^(3/2), `square`).  Each output row carries a `guards`
//! column recording whether the resource guards were left at their
//! defaults or raised with `--unsafe-raise-guard`.
//!
//! Exit codes: 0 success, 1 usage error (bad flags, bad ranges, domain
//! errors, unwritable output), 2 resource-guard or numeric-overflow
//! bailout, 3 verification failure from the `verify` subcommand.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::asymptotics::{
    b_coefficients, b_series, binomial_form_estimate, pemantle_wilson_estimate, uniform_estimate,
    volume_form_estimate, EstimateReport,
};
use crate::concentration::{
    clt_tail_probability, deficit_count_with_guards, few_ones_count_with_guards,
    large_coordinate_count_with_guards, second_moment, shell_ratio,
};
use crate::contour::{contour_count, saddle_split, ContourSpec, Kernel};
use crate::counts::{
    bounded_ball_count_with_guards, delannoy, sphere_count, support_shell_count,
};
use crate::ehrhart::ehrhart_polynomial_with_guards;
use crate::error::{Error, Guards, Result};
use crate::grid::{
    ball_average_with_guards, maximal_function_with_guards, norm_probe_curve_with_guards,
    sphere_average_with_guards, AverageKind, GridFunction, RadiusSet,
};
use crate::multiplier::{
    beta_multiplier, multiplier_bound_scan_with_guards, multiplier_m_with_guards,
    multiplier_s_with_guards, torus_norm, torus_partition, FrequencyPoint,
};
use crate::verify::{run_suite, Suite};

/// Environment variable naming the directory that relative `--out` paths
/// are resolved against.
pub const OUT_DIR_ENV: &str = "ORTHOPLEX_OUT_DIR";

/// Entry point used by the binary and by tests: parses `argv`, runs the
/// subcommand, writes its table to `out` (or the `--out` file), and
/// returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return 1;
            }
            let _ = write!(out, "{rendered}");
            return 0;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Domain(_) => 1,
                Error::Guard { .. } | Error::NonFinite { .. } => 2,
            }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "orthoplex",
    version,
    about = "Exact counts, estimates, and averaging operators for lattice cross-polytopes",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// An inclusive integer range with a step, parsed from "5", "1..300", or
/// "1..300:3".
#[derive(Debug, Clone, Copy)]
struct Span {
    lo: u64,
    hi: u64,
    step: u64,
}

impl Span {
    fn values(self) -> impl Iterator<Item = u64> {
        (self.lo..=self.hi).step_by(self.step as usize)
    }
}

fn parse_span(text: &str) -> std::result::Result<Span, String> {
    let (range, step) = match text.split_once(':') {
        Some((range, step)) => {
            let step: u64 = step
                .parse()
                .map_err(|_| format!("bad step in range: {text}"))?;
            if step == 0 {
                return Err(format!("step must be positive: {text}"));
            }
            (range, step)
        }
        None => (text, 1),
    };
    let (lo, hi) = match range.split_once("..") {
        Some((lo, hi)) => {
            let lo: u64 = lo.parse().map_err(|_| format!("bad range start: {text}"))?;
            let hi: u64 = hi.parse().map_err(|_| format!("bad range end: {text}"))?;
            (lo, hi)
        }
        None => {
            let v: u64 = range.parse().map_err(|_| format!("bad value: {text}"))?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range: {text}"));
    }
    Ok(Span { lo, hi, step })
}

/// Radius as a function of dimension, evaluated with floor.
#[derive(Debug, Clone, Copy, ValueEnum)]
enum NOf {
    /// floor(sqrt(d))
    Sqrt,
    /// d
    Linear,
    /// floor(d^(3/2))
    Pow32,
    /// d^2
    Square,
}

impl NOf {
    fn apply(self, d: u64) -> u64 {
        match self {
            NOf::Sqrt => (d as f64).sqrt().floor() as u64,
            NOf::Linear => d,
            NOf::Pow32 => (d as f64).powf(1.5).floor() as u64,
            NOf::Square => d.saturating_mul(d),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KernelArg {
    Ball,
    Sphere,
}

impl KernelArg {
    fn kernel(self) -> Kernel {
        match self {
            KernelArg::Ball => Kernel::Ball,
            KernelArg::Sphere => Kernel::Sphere,
        }
    }

    fn average(self) -> AverageKind {
        match self {
            KernelArg::Ball => AverageKind::Ball,
            KernelArg::Sphere => AverageKind::Sphere,
        }
    }

    fn name(self) -> &'static str {
        match self {
            KernelArg::Ball => "ball",
            KernelArg::Sphere => "sphere",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WhichEstimate {
    Uniform,
    Binomial,
    Volume,
    Pw,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InputKind {
    /// Independent +-1 values on every site.
    Signs,
    /// Sparse +-1 values (density 1/8).
    Sparse,
    /// A point mass at the origin.
    Delta,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Counts,
    Asymptotics,
    Contour,
    Operators,
    Concentration,
    All,
}

impl SuiteArg {
    fn suite(self) -> Suite {
        match self {
            SuiteArg::Counts => Suite::Counts,
            SuiteArg::Asymptotics => Suite::Asymptotics,
            SuiteArg::Contour => Suite::Contour,
            SuiteArg::Operators => Suite::Operators,
            SuiteArg::Concentration => Suite::Concentration,
            SuiteArg::All => Suite::All,
        }
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Args)]
struct Emission {
    /// Output table format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table to this file instead of stdout; relative paths
    /// resolve against ORTHOPLEX_OUT_DIR when that is set.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Multiply every resource guard by 64; rows are tagged "raised".
    #[arg(long)]
    unsafe_raise_guard: bool,
}

impl Emission {
    fn guards(&self) -> Guards {
        if self.unsafe_raise_guard {
            Guards::raised()
        } else {
            Guards::default()
        }
    }

    fn guard_tag(&self) -> &'static str {
        if self.unsafe_raise_guard {
            "raised"
        } else {
            "default"
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count the lattice points of the l1 ball of radius n in Z^d.
    Delannoy {
        #[arg(long, value_parser = parse_span)]
        d: Span,
        #[arg(long, value_parser = parse_span)]
        n: Option<Span>,
        #[arg(long, value_enum)]
        n_of: Option<NOf>,
        #[command(flatten)]
        emission: Emission,
    },
    /// Count the lattice points with l1 norm exactly n.
    Sphere {
        #[arg(long, value_parser = parse_span)]
        d: Span,
        #[arg(long, value_parser = parse_span)]
        n: Option<Span>,
        #[arg(long, value_enum)]
        n_of: Option<NOf>,
        #[command(flatten)]
        emission: Emission,
    },
    /// Count the ball points with exactly s nonzero coordinates.
    Shell {
        #[arg(long, value_parser = parse_span)]
        d: Span,
        #[arg(long)]
        s: u64,
        #[arg(long, value_parser = parse_span)]
        n: Option<Span>,
        #[arg(long, value_enum)]
        n_of: Option<NOf>,
        #[command(flatten)]
        emission: Emission,
    },
    /// Count the ball points with every coordinate bounded by m.
    Bounded {
        #[arg(long, value_parser = parse_span)]
        d: Span,
        #[arg(long, value_parser = parse_span)]
        n: Option<Span>,
        #[arg(long, value_enum)]
        n_of: Option<NOf>,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        emission: Emission,
    },
    /// Emit the counting polynomial coefficients for dimension d.
    Ehrhart {
        #[arg(long, value_parser = parse_span)]
        d: Span,
        #[command(flatten)]
        emission: Emission,
    },
    /// Closed-form estimates of the ball count.
    Estimate {
        #[arg(long, value_enum)]
        which: WhichEstimate,
        #[arg(long, value_parser = parse_span)]
        d: Span,
        #[arg(long, value_parser = parse_span)]
        n: Option<Span>,
        #[arg(long, value_enum)]
        n_of: Option<NOf>,
        #[command(flatten)]
        emission: Emission,
    },
    /// Coefficients of the correction series, or its value at an aspect
    /// ratio when --alpha is given.
    Bseries {
        #[arg(long, default_value_t = 12)]
        max_order: usize,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[command(flatten)]
        emission: Emission,
    },
    /// Recover counts by trapezoid quadrature on a circle contour.
    Contour {
        #[arg(long, value_parser = parse_span)]
        d: Span,
        #[arg(long, value_parser = parse_span)]
        n: Option<Span>,
        #[arg(long, value_enum)]
        n_of: Option<NOf>,
        #[arg(long, default_value_t = 256)]
        nodes: u32,
        /// Contour radius in (0, 1); defaults to the saddle radius.
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, value_enum, default_value_t = KernelArg::Ball)]
        kernel: KernelArg,
        #[command(flatten)]
        emission: Emission,
    },
    /// Split the sphere-count contour at angle delta and report the arcs.
    SaddleSplit {
        #[arg(long, value_parser = parse_span)]
        d: Span,
        #[arg(long, value_parser = parse_span)]
        n: Option<Span>,
        #[arg(long, value_enum)]
        n_of: Option<NOf>,
        #[arg(long)]
        delta: f64,
        #[command(flatten)]
        emission: Emission,
    },
    /// Apply one discrete averaging operator to a seeded input.
    Average {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        half_width: u32,
        #[arg(long, value_parser = parse_span)]
        radius: Span,
        #[arg(long, value_enum, default_value_t = KernelArg::Ball)]
        kind: KernelArg,
        #[arg(long, value_enum, default_value_t = InputKind::Signs)]
        input: InputKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        emission: Emission,
    },
    /// Apply the maximal operator over a radius set to a seeded input.
    Maximal {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        half_width: u32,
        /// Radius set: "full:MAX", "dyadic:MAX", "LO..HI", or "1,2,5".
        #[arg(long)]
        radii: String,
        #[arg(long, value_enum, default_value_t = KernelArg::Ball)]
        kind: KernelArg,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, value_enum, default_value_t = InputKind::Signs)]
        input: InputKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        emission: Emission,
    },
    /// Empirical operator-norm curve of the maximal operator as radii
    /// accumulate.
    NormProbe {
        #[arg(long)]
        dim: u32,
        /// Radius set: "full:MAX", "dyadic:MAX", "LO..HI", or "1,2,5".
        #[arg(long)]
        radii: String,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 2)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        emission: Emission,
    },
    /// Evaluate the ball or sphere Fourier symbol at one frequency.
    Multiplier {
        #[arg(long)]
        n: u64,
        /// Frequency coordinates, comma separated; the dimension is their
        /// count.
        #[arg(long)]
        xi: String,
        #[arg(long, value_enum, default_value_t = KernelArg::Ball)]
        kind: KernelArg,
        #[command(flatten)]
        emission: Emission,
    },
    /// Scan the torus for the empirical symbol decay constants.
    MultScan {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 48)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        emission: Emission,
    },
    /// Average the character over one sign-magnitude symmetry class.
    Beta {
        #[arg(long)]
        d: u64,
        /// Multiplicity profile, comma separated: j_k coordinates of
        /// absolute value k.
        #[arg(long)]
        profile: String,
        #[arg(long)]
        xi: String,
        #[command(flatten)]
        emission: Emission,
    },
    /// Count points whose small-coordinate l1 mass stays below n - a.
    Deficit {
        #[arg(long, value_parser = parse_span)]
        d: Span,
        #[arg(long, value_parser = parse_span)]
        n: Option<Span>,
        #[arg(long, value_enum)]
        n_of: Option<NOf>,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        surface: bool,
        #[command(flatten)]
        emission: Emission,
    },
    /// Count sphere points with at most n/2 coordinates equal to +-1.
    FewOnes {
        #[arg(long, value_parser = parse_span)]
        d: Span,
        #[arg(long, value_parser = parse_span)]
        n: Option<Span>,
        #[arg(long, value_enum)]
        n_of: Option<NOf>,
        #[command(flatten)]
        emission: Emission,
    },
    /// Count ball points with some coordinate of absolute value >= 6k.
    LargeCoord {
        #[arg(long, value_parser = parse_span)]
        d: Span,
        #[arg(long, value_parser = parse_span)]
        n: Option<Span>,
        #[arg(long, value_enum)]
        n_of: Option<NOf>,
        #[arg(long)]
        k: f64,
        #[command(flatten)]
        emission: Emission,
    },
    /// Exact ratio of adjacent support shells.
    ShellRatio {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        c: f64,
        #[arg(long, value_parser = parse_span, default_value = "1")]
        l: Span,
        #[command(flatten)]
        emission: Emission,
    },
    /// Exact second moment of one coordinate over the ball.
    SecondMoment {
        #[arg(long, value_parser = parse_span)]
        d: Span,
        #[arg(long, value_parser = parse_span)]
        n: Option<Span>,
        #[arg(long, value_enum)]
        n_of: Option<NOf>,
        #[command(flatten)]
        emission: Emission,
    },
    /// Monte Carlo tail probability of a sum of uniforms.
    CltTail {
        #[arg(long)]
        d_star: u64,
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        emission: Emission,
    },
    /// Run an invariant suite and print its pass/fail table.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 64)]
        max_d: u64,
        #[arg(long, default_value_t = 64)]
        max_n: u64,
        #[command(flatten)]
        emission: Emission,
    },
}

/// A homogeneous output table: fixed columns, string cells.
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Reals carry 17 significant digits, enough to round-trip f64.
fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn rational(r: &num_rational::BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn emit(table: &Table, format: Format, sink: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(&table.columns)?;
            for row in &table.rows {
                writer.write_record(row)?;
            }
            let bytes = writer.into_inner().map_err(|e| e.into_error())?;
            sink.write_all(&bytes)
        }
        Format::Json => {
            let array: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|row| {
                    let mut object = serde_json::Map::new();
                    for (column, cell) in table.columns.iter().zip(row) {
                        object.insert(
                            column.to_string(),
                            serde_json::Value::String(cell.clone()),
                        );
                    }
                    serde_json::Value::Object(object)
                })
                .collect();
            serde_json::to_writer_pretty(&mut *sink, &array)?;
            writeln!(sink)
        }
    }
}

fn deliver(table: &Table, emission: &Emission, out: &mut dyn Write) -> Result<()> {
    let mut bytes = Vec::new();
    emit(table, emission.format, &mut bytes)
        .map_err(|e| Error::Domain(format!("emission failed: {e}")))?;
    match &emission.out {
        Some(path) => {
            let resolved = if path.is_relative() {
                match std::env::var_os(OUT_DIR_ENV) {
                    Some(dir) => PathBuf::from(dir).join(path),
                    None => path.clone(),
                }
            } else {
                path.clone()
            };
            std::fs::write(&resolved, &bytes)
                .map_err(|e| Error::Domain(format!("cannot write {}: {e}", resolved.display())))
        }
        None => out
            .write_all(&bytes)
            .map_err(|e| Error::Domain(format!("cannot write to stdout: {e}"))),
    }
}

/// Resolves the --n / --n-of pair against a dimension sweep.
fn radius_pairs(d: Span, n: Option<Span>, n_of: Option<NOf>) -> Result<Vec<(u64, u64)>> {
    match (n, n_of) {
        (Some(n), None) => {
            let mut pairs = Vec::new();
            for d in d.values() {
                for n in n.values() {
                    pairs.push((d, n));
                }
            }
            Ok(pairs)
        }
        (None, Some(f)) => Ok(d.values().map(|d| (d, f.apply(d))).collect()),
        (None, None) => Err(Error::Domain("provide --n or --n-of".into())),
        (Some(_), Some(_)) => Err(Error::Domain("--n conflicts with --n-of".into())),
    }
}

fn parse_f64_list(text: &str, what: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::Domain(format!("bad {what} entry: {part}")))
        })
        .collect()
}

fn parse_u64_list(text: &str, what: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| Error::Domain(format!("bad {what} entry: {part}")))
        })
        .collect()
}

/// Radius-set syntax: "full:MAX", "dyadic:MAX", "LO..HI", or "1,2,5".
fn parse_radius_set(text: &str) -> Result<RadiusSet> {
    if let Some(max) = text.strip_prefix("full:") {
        let max: u32 = max
            .parse()
            .map_err(|_| Error::Domain(format!("bad radius set: {text}")))?;
        return Ok(RadiusSet::FullRange { max });
    }
    if let Some(max) = text.strip_prefix("dyadic:") {
        let max: u32 = max
            .parse()
            .map_err(|_| Error::Domain(format!("bad radius set: {text}")))?;
        return Ok(RadiusSet::Dyadic { max });
    }
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u32 = lo
            .parse()
            .map_err(|_| Error::Domain(format!("bad radius set: {text}")))?;
        let hi: u32 = hi
            .parse()
            .map_err(|_| Error::Domain(format!("bad radius set: {text}")))?;
        return Ok(RadiusSet::Interval { lo, hi });
    }
    let radii: Vec<u32> = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| Error::Domain(format!("bad radius set: {text}")))
        })
        .collect::<Result<_>>()?;
    Ok(RadiusSet::Explicit(radii))
}

fn build_input(kind: InputKind, dim: u32, half_width: u32, seed: u64) -> Result<GridFunction> {
    match kind {
        InputKind::Signs => GridFunction::random_signs(dim, half_width, seed),
        InputKind::Sparse => GridFunction::random_sparse(dim, half_width, 0.125, seed),
        InputKind::Delta => GridFunction::delta(dim, half_width),
    }
}

fn estimate_row(which: WhichEstimate, d: u64, n: u64) -> Result<EstimateReport> {
    match which {
        WhichEstimate::Uniform => uniform_estimate(d, n),
        WhichEstimate::Binomial => binomial_form_estimate(d, n),
        WhichEstimate::Volume => volume_form_estimate(d, n),
        WhichEstimate::Pw => pemantle_wilson_estimate(d, n),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Delannoy { d, n, n_of, emission } => {
            let mut table = Table::new(&["d", "n", "value", "provenance", "guards"]);
            for (d, n) in radius_pairs(d, n, n_of)? {
                table.push(vec![
                    d.to_string(),
                    n.to_string(),
                    delannoy(d, n).to_string(),
                    "exact".into(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::Sphere { d, n, n_of, emission } => {
            let mut table = Table::new(&["d", "n", "value", "provenance", "guards"]);
            for (d, n) in radius_pairs(d, n, n_of)? {
                table.push(vec![
                    d.to_string(),
                    n.to_string(),
                    sphere_count(d, n).to_string(),
                    "exact".into(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::Shell { d, s, n, n_of, emission } => {
            let mut table = Table::new(&["d", "s", "n", "value", "provenance", "guards"]);
            for (d, n) in radius_pairs(d, n, n_of)? {
                table.push(vec![
                    d.to_string(),
                    s.to_string(),
                    n.to_string(),
                    support_shell_count(d, s, n).to_string(),
                    "exact".into(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::Bounded { d, n, n_of, m, emission } => {
            let guards = emission.guards();
            let mut table = Table::new(&["d", "n", "m", "value", "provenance", "guards"]);
            for (d, n) in radius_pairs(d, n, n_of)? {
                table.push(vec![
                    d.to_string(),
                    n.to_string(),
                    m.to_string(),
                    bounded_ball_count_with_guards(d, n, m, &guards)?.to_string(),
                    "exact".into(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::Ehrhart { d, emission } => {
            let guards = emission.guards();
            let mut table = Table::new(&["d", "degree", "coefficient", "provenance", "guards"]);
            for d in d.values() {
                let d32 = u32::try_from(d)
                    .map_err(|_| Error::Domain(format!("dimension too large: {d}")))?;
                let poly = ehrhart_polynomial_with_guards(d32, &guards)?;
                for (degree, coefficient) in poly.coefficients().iter().enumerate() {
                    table.push(vec![
                        d.to_string(),
                        degree.to_string(),
                        rational(coefficient),
                        "exact".into(),
                        emission.guard_tag().into(),
                    ]);
                }
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::Estimate { which, d, n, n_of, emission } => {
            let mut table = Table::new(&[
                "which",
                "d",
                "n",
                "log_estimate",
                "estimate",
                "provenance",
                "guards",
            ]);
            for (d, n) in radius_pairs(d, n, n_of)? {
                let report = estimate_row(which, d, n)?;
                table.push(vec![
                    report.kind.name().into(),
                    d.to_string(),
                    n.to_string(),
                    real(report.log_estimate),
                    real(report.estimate),
                    "estimate".into(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::Bseries { max_order, alpha, order, emission } => {
            let table = match alpha {
                None => {
                    let mut table = Table::new(&["k", "b_k", "provenance", "guards"]);
                    for (k, value) in b_coefficients(max_order)?.iter().enumerate() {
                        table.push(vec![
                            k.to_string(),
                            real(*value),
                            "estimate".into(),
                            emission.guard_tag().into(),
                        ]);
                    }
                    table
                }
                Some(alpha) => {
                    let mut table =
                        Table::new(&["alpha", "order", "value", "provenance", "guards"]);
                    table.push(vec![
                        real(alpha),
                        order.to_string(),
                        real(b_series(alpha, order)?),
                        "estimate".into(),
                        emission.guard_tag().into(),
                    ]);
                    table
                }
            };
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::Contour { d, n, n_of, nodes, radius, kernel, emission } => {
            let mut table = Table::new(&[
                "d",
                "n",
                "kernel",
                "radius",
                "nodes",
                "value",
                "provenance",
                "guards",
            ]);
            for (d, n) in radius_pairs(d, n, n_of)? {
                let spec = match radius {
                    Some(radius) => ContourSpec {
                        radius,
                        nodes,
                        kernel: kernel.kernel(),
                    },
                    None => ContourSpec::at_default_radius(d, n, nodes, kernel.kernel()),
                };
                table.push(vec![
                    d.to_string(),
                    n.to_string(),
                    kernel.name().into(),
                    real(spec.radius),
                    nodes.to_string(),
                    real(contour_count(d, n, &spec)?),
                    "quadrature".into(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::SaddleSplit { d, n, n_of, delta, emission } => {
            let mut table = Table::new(&[
                "d",
                "n",
                "delta",
                "count",
                "tail_ratio",
                "provenance",
                "guards",
            ]);
            for (d, n) in radius_pairs(d, n, n_of)? {
                let split = saddle_split(d, n, delta)?;
                table.push(vec![
                    d.to_string(),
                    n.to_string(),
                    real(delta),
                    real(split.count()),
                    real(split.tail_ratio),
                    "quadrature".into(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::Average { dim, half_width, radius, kind, input, seed, emission } => {
            let guards = emission.guards();
            let f = build_input(input, dim, half_width, seed)?;
            let mut table = Table::new(&[
                "dim",
                "half_width",
                "kind",
                "radius",
                "seed",
                "in_l1",
                "out_l1",
                "in_l2",
                "out_l2",
                "in_linf",
                "out_linf",
                "provenance",
                "guards",
            ]);
            for radius in radius.values() {
                let radius = u32::try_from(radius)
                    .map_err(|_| Error::Domain(format!("radius too large: {radius}")))?;
                let averaged = match kind.average() {
                    AverageKind::Ball => ball_average_with_guards(&f, radius, &guards)?,
                    AverageKind::Sphere => sphere_average_with_guards(&f, radius, &guards)?,
                };
                table.push(vec![
                    dim.to_string(),
                    half_width.to_string(),
                    kind.name().into(),
                    radius.to_string(),
                    seed.to_string(),
                    real(f.lp_norm(1.0)),
                    real(averaged.lp_norm(1.0)),
                    real(f.lp_norm(2.0)),
                    real(averaged.lp_norm(2.0)),
                    real(f.lp_norm(f64::INFINITY)),
                    real(averaged.lp_norm(f64::INFINITY)),
                    "exact".into(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::Maximal { dim, half_width, radii, kind, p, input, seed, emission } => {
            let guards = emission.guards();
            let set = parse_radius_set(&radii)?;
            let f = build_input(input, dim, half_width, seed)?;
            let maximal = maximal_function_with_guards(&f, &set, kind.average(), &guards)?;
            let input_norm = f.lp_norm(p);
            let output_norm = maximal.lp_norm(p);
            let mut table = Table::new(&[
                "dim",
                "half_width",
                "kind",
                "radii",
                "p",
                "seed",
                "input_norm",
                "output_norm",
                "ratio",
                "provenance",
                "guards",
            ]);
            let realized: Vec<String> = set.realize()?.iter().map(|r| r.to_string()).collect();
            table.push(vec![
                dim.to_string(),
                half_width.to_string(),
                kind.name().into(),
                realized.join(";"),
                real(p),
                seed.to_string(),
                real(input_norm),
                real(output_norm),
                real(output_norm / input_norm),
                "exact".into(),
                emission.guard_tag().into(),
            ]);
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::NormProbe { dim, radii, p, trials, seed, emission } => {
            let guards = emission.guards();
            let set = parse_radius_set(&radii)?;
            let curve = norm_probe_curve_with_guards(dim, &set, p, trials, seed, &guards)?;
            let mut table = Table::new(&[
                "dim",
                "p",
                "trials",
                "seed",
                "radius_count",
                "ratio",
                "provenance",
                "guards",
            ]);
            for (index, ratio) in curve.iter().enumerate() {
                table.push(vec![
                    dim.to_string(),
                    real(p),
                    trials.to_string(),
                    seed.to_string(),
                    (index + 1).to_string(),
                    real(*ratio),
                    "exact".into(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::Multiplier { n, xi, kind, emission } => {
            let guards = emission.guards();
            let coords = parse_f64_list(&xi, "frequency")?;
            let point = FrequencyPoint::new(coords)?;
            let d = point.dim() as u64;
            let value = match kind {
                KernelArg::Ball => multiplier_m_with_guards(d, n, &point, &guards)?,
                KernelArg::Sphere => multiplier_s_with_guards(d, n, &point, &guards)?,
            };
            let mut table = Table::new(&[
                "d",
                "n",
                "kind",
                "xi",
                "omega",
                "region",
                "value",
                "provenance",
                "guards",
            ]);
            let reduced: Vec<String> = point.coords().iter().map(|c| real(*c)).collect();
            table.push(vec![
                d.to_string(),
                n.to_string(),
                kind.name().into(),
                reduced.join(","),
                real(torus_norm(&point)),
                torus_partition(&point).name().into(),
                real(value.re),
                "exact".into(),
                emission.guard_tag().into(),
            ]);
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::MultScan { d, n, samples, seed, emission } => {
            let guards = emission.guards();
            let scan = multiplier_bound_scan_with_guards(d, n, samples, seed, &guards)?;
            let mut table = Table::new(&[
                "d",
                "n",
                "alpha",
                "samples",
                "seed",
                "local_constant",
                "global_constant",
                "local_points",
                "global_points",
                "provenance",
                "guards",
            ]);
            table.push(vec![
                d.to_string(),
                n.to_string(),
                real(scan.alpha),
                samples.to_string(),
                seed.to_string(),
                real(scan.local_constant),
                real(scan.global_constant),
                scan.local_points.to_string(),
                scan.global_points.to_string(),
                "exact".into(),
                emission.guard_tag().into(),
            ]);
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::Beta { d, profile, xi, emission } => {
            let profile_values = parse_u64_list(&profile, "profile")?;
            let coords = parse_f64_list(&xi, "frequency")?;
            let point = FrequencyPoint::new(coords)?;
            let value = beta_multiplier(d, &profile_values, &point)?;
            let class_size = crate::counts::composition_class_count(d, &profile_values)?;
            let mut table = Table::new(&[
                "d",
                "profile",
                "xi",
                "class_size",
                "value_re",
                "value_im",
                "provenance",
                "guards",
            ]);
            let profile_text: Vec<String> =
                profile_values.iter().map(|j| j.to_string()).collect();
            let reduced: Vec<String> = point.coords().iter().map(|c| real(*c)).collect();
            table.push(vec![
                d.to_string(),
                profile_text.join(","),
                reduced.join(","),
                class_size.to_string(),
                real(value.re),
                real(value.im),
                "exact".into(),
                emission.guard_tag().into(),
            ]);
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::Deficit { d, n, n_of, k, a, surface, emission } => {
            let guards = emission.guards();
            let mut table = Table::new(&[
                "d",
                "n",
                "k",
                "a",
                "surface",
                "bad_count",
                "total",
                "fraction",
                "provenance",
                "guards",
            ]);
            for (d, n) in radius_pairs(d, n, n_of)? {
                let report = deficit_count_with_guards(d, n, k, a, surface, &guards)?;
                table.push(vec![
                    d.to_string(),
                    n.to_string(),
                    k.to_string(),
                    a.to_string(),
                    surface.to_string(),
                    report.bad_count.to_string(),
                    report.total.to_string(),
                    real(report.fraction()),
                    "exact".into(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::FewOnes { d, n, n_of, emission } => {
            let guards = emission.guards();
            let mut table = Table::new(&[
                "d",
                "n",
                "bad_count",
                "total",
                "fraction",
                "provenance",
                "guards",
            ]);
            for (d, n) in radius_pairs(d, n, n_of)? {
                let report = few_ones_count_with_guards(d, n, &guards)?;
                table.push(vec![
                    d.to_string(),
                    n.to_string(),
                    report.bad_count.to_string(),
                    report.total.to_string(),
                    real(report.fraction()),
                    "exact".into(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::LargeCoord { d, n, n_of, k, emission } => {
            let guards = emission.guards();
            let mut table = Table::new(&[
                "d",
                "n",
                "k",
                "bad_count",
                "total",
                "fraction",
                "provenance",
                "guards",
            ]);
            for (d, n) in radius_pairs(d, n, n_of)? {
                let report = large_coordinate_count_with_guards(d, n, k, &guards)?;
                table.push(vec![
                    d.to_string(),
                    n.to_string(),
                    real(k),
                    report.bad_count.to_string(),
                    report.total.to_string(),
                    real(report.fraction()),
                    "exact".into(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::ShellRatio { d, n, c, l, emission } => {
            let mut table = Table::new(&[
                "d",
                "n",
                "c",
                "l",
                "ratio",
                "ratio_real",
                "provenance",
                "guards",
            ]);
            for l in l.values() {
                let ratio = shell_ratio(d, n, c, l)?;
                let approx = ratio.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
                    / ratio.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
                table.push(vec![
                    d.to_string(),
                    n.to_string(),
                    real(c),
                    l.to_string(),
                    rational(&ratio),
                    real(approx),
                    "exact".into(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::SecondMoment { d, n, n_of, emission } => {
            let mut table = Table::new(&[
                "d",
                "n",
                "moment",
                "ratio_to_alpha_sq",
                "provenance",
                "guards",
            ]);
            for (d, n) in radius_pairs(d, n, n_of)? {
                let report = second_moment(d, n)?;
                table.push(vec![
                    d.to_string(),
                    n.to_string(),
                    rational(&report.moment),
                    real(report.ratio_to_alpha_sq),
                    "exact".into(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::CltTail { d_star, c, samples, seed, emission } => {
            let report = clt_tail_probability(d_star, c, samples, seed)?;
            let mut table = Table::new(&[
                "d_star",
                "c",
                "threshold",
                "samples",
                "seed",
                "hits",
                "estimate",
                "stderr",
                "gaussian",
                "provenance",
                "guards",
            ]);
            table.push(vec![
                d_star.to_string(),
                real(c),
                report.threshold.to_string(),
                samples.to_string(),
                seed.to_string(),
                report.hits.to_string(),
                real(report.estimate),
                real(report.stderr),
                real(report.gaussian),
                "monte_carlo".into(),
                emission.guard_tag().into(),
            ]);
            deliver(&table, &emission, out)?;
            Ok(0)
        }
        Command::Verify { suite, max_d, max_n, emission } => {
            let guards = emission.guards();
            let report = run_suite(suite.suite(), max_d, max_n, &guards);
            let mut table = Table::new(&["suite", "check", "status", "detail", "guards"]);
            for outcome in &report.outcomes {
                table.push(vec![
                    outcome.suite.into(),
                    outcome.check.into(),
                    if outcome.passed { "pass" } else { "fail" }.into(),
                    outcome.detail.clone(),
                    emission.guard_tag().into(),
                ]);
            }
            deliver(&table, &emission, out)?;
            Ok(if report.all_passed() { 0 } else { 3 })
        }
    }
}

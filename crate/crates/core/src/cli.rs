//! `fibpad` command-line front end.
//!
//! Every command produces one table. CSV output has a header row and LF line
//! endings, JSON output is an array of row objects, and text output is the
//! same table aligned for reading with a few summary lines appended.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::Matrix2;
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::anyon::{fusion_dim, Charge, MAX_FUSION_ANYONS};
use crate::braid::{compile_unitary, evaluate_word, haar_unitary, BraidWord};
use crate::dqotp::{
    bell_capacity_bounds, bell_message_set, gram_matrix, max_off_diagonal, search_max_message_set,
    MessageSet, SearchOptions,
};
use crate::fusion::{bell_power_state, enumerate_basis, gp_state, BipartiteDecomposition};
use crate::holevo::{average_state_entropy, default_grid, sweep, SweepRow};
use crate::linalg::{anyonic_entropy, reduced_density, SectorOperator, Side};
use crate::simplex::{
    build_simplex_vectors, max_messages, max_messages_exact, required_inner_product,
    vectors_to_unitaries,
};
use crate::{Error, Result, C64};

/// Environment variable read for the worker thread count.
pub const THREADS_ENV: &str = "FIBPAD_THREADS";
/// Largest basis `dims --paths` will list.
pub const MAX_LISTED_PATHS: u128 = 1 << 20;
/// Largest grid `sweep` accepts.
pub const MAX_SWEEP_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "fibpad",
    version,
    about = "Fibonacci anyons and deterministic one-time pad capacities"
)]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomised searches and random targets.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Fusion-space dimension of n τ anyons with a given total charge.
    Dims {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "vacuum")]
        charge: Charge,
        /// List the fusion paths instead of counting them.
        #[arg(long)]
        paths: bool,
    },
    /// Anyonic Bell-state powers.
    Bell {
        #[command(subcommand)]
        action: BellAction,
    },
    /// The six-anyon family G(p).
    Gp {
        /// Parameter as a rational (`1/5`), decimal (`0.2`) or float.
        #[arg(long)]
        p: PValue,
        #[arg(long, value_enum, default_value_t = GpEmit::Max)]
        emit: GpEmit,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Mutual information and Holevo quantity across p.
    Sweep {
        /// Uniform grid points on [0, 1]; breakpoints are always added.
        #[arg(long, default_value_t = 1001)]
        points: usize,
    },
    /// Reduced-state entropies and mutual information.
    Entropy {
        #[arg(long, conflicts_with = "bell", required_unless_present = "bell")]
        p: Option<PValue>,
        /// Number of Bell pairs per side.
        #[arg(long)]
        bell: Option<u32>,
    },
    /// Braid words on three τ anyons.
    Braid {
        #[command(subcommand)]
        action: BraidAction,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum BellAction {
    /// Capacity bounds for n copies.
    Bounds {
        #[arg(long)]
        n: u32,
    },
    /// Numerical maximal message set.
    Search {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Clock-and-shift message set.
    MessageSet {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum BraidAction {
    /// Evaluate a word such as `g1 g2^-1 g1`.
    Eval {
        #[arg(long)]
        word: String,
    },
    /// Approximate a τ-sector unitary by a braid word.
    Compile {
        /// JSON 2x2 matrix of `{"re", "im"}` entries, inline or as a file path.
        #[arg(long, required_unless_present = "random", conflicts_with = "random")]
        target: Option<String>,
        /// Use a Haar-random target drawn from `--seed`.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GpEmit {
    Simplex,
    Unitaries,
    Gram,
    Max,
    Search,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SearchArgs {
    /// Random restarts per target size.
    #[arg(long, default_value_t = 24)]
    pub trials: usize,
    #[arg(long, default_value_t = crate::dqotp::DEFAULT_ORTHOGONALITY_TOL)]
    pub tol: f64,
}

/// A parameter in `[0, 1]`, kept exact when written as a fraction or a plain
/// decimal.
#[derive(Debug, Clone, PartialEq)]
pub struct PValue {
    pub exact: Option<Ratio<i128>>,
    pub value: f64,
}

impl FromStr for PValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse {s:?} as a number"));
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(Error::Parse(format!("{s:?} has a zero denominator")));
            }
            return Ok(PValue {
                exact: Some(Ratio::new(n as i128, d as i128)),
                // Correctly rounded when both parts are below 2^53.
                value: n as f64 / d as f64,
            });
        }
        let value: f64 = s.parse().map_err(|_| bad())?;
        if !value.is_finite() {
            return Err(bad());
        }
        Ok(PValue {
            exact: decimal_ratio(s),
            value,
        })
    }
}

/// Exact value of a plain decimal literal such as `0.25`.
fn decimal_ratio(s: &str) -> Option<Ratio<i128>> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 30 {
        return None;
    }
    let digits: i128 = format!("{int}{frac}").parse().ok()?;
    let r = Ratio::new(digits, 10i128.checked_pow(frac.len() as u32)?);
    Some(if neg { -r } else { r })
}

/// A command's result before formatting.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra lines shown only in text output.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    UInt(u128),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_i128(*v),
            Cell::UInt(v) => s.serialize_u128(*v),
            Cell::Float(v) => s.serialize_f64(*v),
            Cell::Bool(v) => s.serialize_bool(*v),
            Cell::Text(v) => s.serialize_str(v),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::UInt(v as u128)
    }
}
impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::UInt(v as u128)
    }
}
impl From<u128> for Cell {
    fn from(v: u128) -> Self {
        Cell::UInt(v)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Report {
    fn new(columns: &[&'static str]) -> Self {
        Report {
            columns: columns.to_vec(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// One row per serialized record; `columns` must match the field order.
    pub fn from_records<T: Serialize>(columns: &[&'static str], records: &[T]) -> Result<Self> {
        let mut report = Report::new(columns);
        for rec in records {
            let value =
                serde_json::to_value(rec).map_err(|e| Error::Serialization(e.to_string()))?;
            let obj = value
                .as_object()
                .ok_or_else(|| Error::Serialization("record is not an object".into()))?;
            let row = columns
                .iter()
                .map(|c| match obj.get(*c) {
                    Some(serde_json::Value::Number(n)) => Ok(if let Some(u) = n.as_u64() {
                        Cell::UInt(u as u128)
                    } else if let Some(i) = n.as_i64() {
                        Cell::Int(i as i128)
                    } else {
                        Cell::Float(n.as_f64().unwrap_or(f64::NAN))
                    }),
                    Some(serde_json::Value::Bool(b)) => Ok(Cell::Bool(*b)),
                    Some(serde_json::Value::String(s)) => Ok(Cell::Text(s.clone())),
                    // serde_json turns non-finite floats into null.
                    Some(serde_json::Value::Null) => Ok(Cell::Float(f64::NAN)),
                    _ => Err(Error::Serialization(format!("missing field {c}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            report.push(row);
        }
        Ok(report)
    }
}

fn check_finite(report: &Report) -> Result<()> {
    for (i, row) in report.rows.iter().enumerate() {
        for (c, cell) in report.columns.iter().zip(row) {
            if let Cell::Float(v) = cell {
                if !v.is_finite() {
                    return Err(Error::Serialization(format!(
                        "non-finite value {v} in row {i}, column {c}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Serializes a report. Floats use the shortest decimal that round-trips.
pub fn emit(report: &Report, format: Format) -> Result<Vec<u8>> {
    check_finite(report)?;
    let ser = |e: csv::Error| Error::Serialization(e.to_string());
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            w.write_record(&report.columns).map_err(ser)?;
            for row in &report.rows {
                w.serialize(row).map_err(ser)?;
            }
            w.into_inner()
                .map_err(|e| Error::Serialization(e.to_string()))
        }
        Format::Json => {
            let rows: Vec<serde_json::Map<String, serde_json::Value>> = report
                .rows
                .iter()
                .map(|row| {
                    report
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, cell)| {
                            serde_json::to_value(cell)
                                .map(|v| (c.to_string(), v))
                                .map_err(|e| Error::Serialization(e.to_string()))
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            let mut out = serde_json::to_vec_pretty(&rows)
                .map_err(|e| Error::Serialization(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Text => Ok(render_text(report).into_bytes()),
    }
}

fn cell_text(cell: &Cell) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::UInt(v) => v.to_string(),
        Cell::Float(v) => format!("{v:?}"),
        Cell::Bool(v) => v.to_string(),
        Cell::Text(v) => v.clone(),
    }
}

fn render_text(report: &Report) -> String {
    let cells: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| r.iter().map(cell_text).collect())
        .collect();
    let widths: Vec<usize> = report
        .columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([c.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: Vec<&str>| {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(report.columns.clone());
    for r in &cells {
        out += &line(r.iter().map(String::as_str).collect());
    }
    for n in &report.notes {
        out += n;
        out.push('\n');
    }
    out
}

const SUMMARY_COLUMNS: &[&str] = &[
    "state",
    "size",
    "bits",
    "max_off_diagonal",
    "security_residual",
    "average_entropy",
];

fn summary_row(label: String, ms: &MessageSet) -> Result<Vec<Cell>> {
    let avg = average_state_entropy(ms.state(), ms)?;
    Ok(vec![
        label.into(),
        ms.len().into(),
        ms.bits().into(),
        max_off_diagonal(&gram_matrix(ms)).into(),
        ms.security_residual().into(),
        avg.bits.into(),
    ])
}

fn summary(label: String, ms: &MessageSet) -> Result<Report> {
    let mut r = Report::new(SUMMARY_COLUMNS);
    r.push(summary_row(label, ms)?);
    Ok(r)
}

const UNITARY_COLUMNS: &[&str] = &[
    "label", "vac_re", "vac_im", "t00_re", "t00_im", "t01_re", "t01_im", "t10_re", "t10_im",
    "t11_re", "t11_im",
];

fn unitary_row(label: String, u: &SectorOperator) -> Result<Vec<Cell>> {
    let (v, t) = (u.block(Charge::Vacuum), u.block(Charge::Tau));
    if v.nrows() != 1 || t.nrows() != 2 {
        return Err(Error::ShapeMismatch(
            "unitary rows need three-anyon operators".into(),
        ));
    }
    let mut row = vec![Cell::Text(label)];
    for z in [v[(0, 0)], t[(0, 0)], t[(0, 1)], t[(1, 0)], t[(1, 1)]] {
        row.push(z.re.into());
        row.push(z.im.into());
    }
    Ok(row)
}

fn search_options(seed: u64, args: &SearchArgs) -> SearchOptions {
    SearchOptions {
        max_trials: args.trials,
        tol: args.tol,
        seed,
    }
}

fn dims(n: u32, charge: Charge, paths: bool) -> Result<Report> {
    if n == 0 || n > MAX_FUSION_ANYONS {
        return Err(Error::Domain(format!(
            "n must be in 1..={MAX_FUSION_ANYONS}, got {n}"
        )));
    }
    let dim = fusion_dim(n, charge);
    if !paths {
        let mut r = Report::new(&["n", "charge", "dim"]);
        r.push(vec![n.into(), charge.to_string().into(), dim.into()]);
        r.notes
            .push(format!("dim V^{charge} of {n} tau anyons = {dim}"));
        return Ok(r);
    }
    if dim > MAX_LISTED_PATHS {
        return Err(Error::ResourceLimit(format!(
            "{dim} paths exceed the listing limit {MAX_LISTED_PATHS}"
        )));
    }
    let mut r = Report::new(&["index", "path"]);
    for (i, p) in enumerate_basis(n, charge)?.iter().enumerate() {
        r.push(vec![i.into(), p.to_string().into()]);
    }
    Ok(r)
}

fn bell(action: &BellAction, seed: u64) -> Result<Report> {
    match action {
        BellAction::Bounds { n } => {
            let b = bell_capacity_bounds(*n)?;
            let mut r = Report::new(&[
                "n",
                "lower",
                "upper",
                "lower_bits_per_copy",
                "upper_bits_per_copy",
            ]);
            r.push(vec![
                b.n.into(),
                b.lower.into(),
                b.upper.into(),
                b.lower_bits_per_copy().into(),
                b.upper_bits_per_copy().into(),
            ]);
            Ok(r)
        }
        BellAction::MessageSet { n } => summary(format!("bell^{n}"), &bell_message_set(*n)?),
        BellAction::Search { n, search } => {
            let ms = search_max_message_set(&bell_power_state(*n)?, search_options(seed, search))?;
            summary(format!("bell^{n}"), &ms)
        }
    }
}

fn gp(p: &PValue, emit: GpEmit, seed: u64, search: &SearchArgs) -> Result<Report> {
    let x = p.value;
    match emit {
        GpEmit::Max => {
            let n = match p.exact {
                Some(r) => max_messages_exact(r)?,
                None => max_messages(x)?,
            };
            let mut r = Report::new(&["p", "n_messages", "bits"]);
            r.push(vec![x.into(), n.into(), (n as f64).log2().into()]);
            Ok(r)
        }
        GpEmit::Simplex => {
            let vs = build_simplex_vectors(x)?;
            let c = if vs.len() > 1 {
                required_inner_product(x)?
            } else {
                1.0
            };
            let mut r = Report::new(&["index", "q0", "q1", "q2", "q3", "max_gram_error"]);
            let mut worst = 0.0f64;
            for (i, v) in vs.iter().enumerate() {
                let err = vs
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, w)| (v.dot(w) - c).abs())
                    .fold(0.0, f64::max);
                worst = worst.max(err);
                let q = v.components();
                r.push(vec![
                    i.into(),
                    q[0].into(),
                    q[1].into(),
                    q[2].into(),
                    q[3].into(),
                    err.into(),
                ]);
            }
            r.notes.push(format!(
                "gram: off-diagonal target {c}, max deviation {worst:e}"
            ));
            r.notes.push(format!("N = {}", vs.len()));
            Ok(r)
        }
        GpEmit::Unitaries => {
            let ms = vectors_to_unitaries(x, &build_simplex_vectors(x)?)?;
            let mut r = Report::new(UNITARY_COLUMNS);
            for (i, u) in ms.unitaries().iter().enumerate() {
                r.push(unitary_row(format!("U{i}"), u)?);
            }
            Ok(r)
        }
        GpEmit::Gram => {
            let ms = vectors_to_unitaries(x, &build_simplex_vectors(x)?)?;
            let g = gram_matrix(&ms);
            let mut r = Report::new(&["i", "j", "re", "im"]);
            for i in 0..g.nrows() {
                for j in 0..g.ncols() {
                    let z = g[(i, j)];
                    r.push(vec![i.into(), j.into(), z.re.into(), z.im.into()]);
                }
            }
            r.notes
                .push(format!("max off-diagonal {:e}", max_off_diagonal(&g)));
            Ok(r)
        }
        GpEmit::Search => {
            let ms = search_max_message_set(&gp_state(x)?, search_options(seed, search))?;
            summary(format!("G({x})"), &ms)
        }
    }
}

fn entropy_report(label: String, state: &BipartiteDecomposition) -> Result<Report> {
    let sa = anyonic_entropy(&reduced_density(state, Side::A))?;
    let sb = anyonic_entropy(&reduced_density(state, Side::B))?;
    let mut r = Report::new(&["state", "n_per_side", "S_A", "S_B", "mutual_info"]);
    r.push(vec![
        label.into(),
        state.n_per_side().into(),
        sa.into(),
        sb.into(),
        (sa + sb).into(),
    ]);
    Ok(r)
}

#[derive(Deserialize)]
struct Entry {
    re: f64,
    im: f64,
}

/// Parses `[[{"re":..,"im":..}, ..], ..]`, read from a file unless the
/// argument itself is JSON.
pub fn parse_target(arg: &str) -> Result<Matrix2<C64>> {
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg)
            .map_err(|e| Error::Parse(format!("cannot read target {arg}: {e}")))?
    };
    let rows: Vec<Vec<Entry>> =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("target: {e}")))?;
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        return Err(Error::ShapeMismatch("target must be 2x2".into()));
    }
    Ok(Matrix2::from_fn(|i, j| {
        C64::new(rows[i][j].re, rows[i][j].im)
    }))
}

fn braid(action: &BraidAction, seed: u64) -> Result<Report> {
    match action {
        BraidAction::Eval { word } => {
            let w: BraidWord = word.parse()?;
            let mut r = Report::new(UNITARY_COLUMNS);
            r.push(unitary_row(w.to_string(), &evaluate_word(&w))?);
            Ok(r)
        }
        BraidAction::Compile {
            target,
            random,
            max_len,
        } => {
            let t = match (target, random) {
                (Some(arg), false) => parse_target(arg)?,
                _ => haar_unitary(&mut ChaCha8Rng::seed_from_u64(seed)),
            };
            let res = compile_unitary(&t, *max_len)?;
            let mut r = Report::new(&["max_len", "word", "length", "distance"]);
            r.push(vec![
                (*max_len).into(),
                res.word.to_string().into(),
                res.word.len().into(),
                res.distance.into(),
            ]);
            Ok(r)
        }
    }
}

/// Runs one command and returns the formatted output.
pub fn dispatch(config: &RunConfig) -> Result<Vec<u8>> {
    let seed = config.seed;
    let report = match &config.command {
        Command::Dims { n, charge, paths } => dims(*n, *charge, *paths)?,
        Command::Bell { action } => bell(action, seed)?,
        Command::Gp { p, emit, search } => gp(p, *emit, seed, search)?,
        Command::Sweep { points } => {
            if *points > MAX_SWEEP_POINTS {
                return Err(Error::ResourceLimit(format!(
                    "{points} points exceed {MAX_SWEEP_POINTS}"
                )));
            }
            let rows = sweep(&default_grid(*points))?;
            sweep_report(&rows)?
        }
        Command::Entropy { p, bell } => match (p, bell) {
            (Some(p), _) => entropy_report(format!("G({})", p.value), &gp_state(p.value)?)?,
            (None, Some(n)) => entropy_report(format!("bell^{n}"), &bell_power_state(*n)?)?,
            (None, None) => return Err(Error::Parse("entropy needs --p or --bell".into())),
        },
        Command::Braid { action } => braid(action, seed)?,
    };
    emit(&report, config.format)
}

pub const SWEEP_COLUMNS: &[&str] = &["p", "n_messages", "I_initial", "I_final", "chi"];

pub fn sweep_report(rows: &[SweepRow]) -> Result<Report> {
    Report::from_records(SWEEP_COLUMNS, rows)
}

/// Parses arguments, runs the command and returns the process exit code:
/// 0 on success, 2 for invalid input, 1 for internal failures.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&config) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("fibpad: {e}");
            if e.is_validation() {
                2
            } else {
                1
            }
        }
    }
}

fn execute(config: &RunConfig) -> Result<()> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = config.threads {
        if t == 0 {
            return Err(Error::Parse(format!("{THREADS_ENV} must be positive")));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::ResourceLimit(e.to_string()))?;
    let bytes = pool.install(|| dispatch(config))?;
    match &config.out {
        Some(path) => fs::write(path, bytes)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

//! Command-line front end for `mosaic-tilings`.
//!
//! [`run`] parses an argument list, executes it, and returns what would be
//! printed together with the exit status, so the binary is a thin wrapper
//! and tests can drive the whole interface in-process.
//!
//! Exit statuses: 0 success, 1 verification failure, 2 usage error,
//! 3 oracle limit exceeded.

pub mod formats;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mosaic_tilings::board::{build_board, BoardSpec, CellGraph, Variant};
use mosaic_tilings::identity::{crosscheck_all, CrossCheckConfig, DEFAULT_POINTS};
use mosaic_tilings::oracle::frontier;
use mosaic_tilings::recurrence::{
    characteristic_coeffs, closed_coeffs, closed_r_table, coefficient_matrix, fib_coeffs,
    fib_r_table, fib_unbreakable_table, system_tables, unbreakable_closed_table,
    unbreakable_system_tables, CoeffSet, Kind, Mode, Provenance, SequenceTable,
};
use mosaic_tilings::{BiPoly, Error, Oracle, DEFAULT_CELL_LIMIT};
use num_bigint::BigInt;
use serde_json::{json, Value};

use formats::{TableHead, Values};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mosaic-tilings", version, about = "Square and domino tilings of (2×n)-boards on {4,q} mosaics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the cell graph of a board.
    Board(BoardArgs),
    /// Count the tilings of one board.
    Count(CountArgs),
    /// Print a sequence over a range of n.
    Seq(SeqArgs),
    /// Print the quartic-recurrence coefficients.
    Coeffs(CoeffsArgs),
    /// Run every cross-check and print the report bundle.
    Verify(VerifyArgs),
}

/// Inclusive range written `lo..hi`, or a single value.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    fn single(self, option: &str) -> Result<u64, Failure> {
        if self.lo == self.hi {
            Ok(self.lo)
        } else {
            Err(Failure::usage(format!("{option} takes a single value here, got {}..{}", self.lo, self.hi)))
        }
    }

    fn is_empty(self) -> bool {
        self.lo > self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("not a non-negative integer: {t:?}"));
        match s.split_once("..") {
            Some((lo, hi)) => Ok(Span { lo: num(lo)?, hi: num(hi)? }),
            None => {
                let v = num(s)?;
                Ok(Span { lo: v, hi: v })
            }
        }
    }
}

/// Weight points written `(a,b);(a,b);...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Points(pub Vec<(i64, i64)>);

impl FromStr for Points {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let inner = part
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| format!("expected (a,b), got {part:?}"))?;
            let (a, b) = inner.split_once(',').ok_or_else(|| format!("expected (a,b), got {part:?}"))?;
            let int = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("not an integer: {t:?}"));
            out.push((int(a)?, int(b)?));
        }
        Ok(Points(out))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Full,
    A,
    B,
    C,
    Path,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Exhaustive enumeration.
    Oracle,
    /// Profile dynamic programming over the columns.
    Frontier,
    /// The coupled linear system.
    System,
    /// Closed forms and the quartic recurrence.
    Closed,
    /// Fibonacci forms at a = b = 1.
    Fib,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    AsStated,
    Corrected,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::AsStated => Mode::AsStated,
            ModeArg::Corrected => Mode::Corrected,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// All tilings of the full board.
    R,
    /// Tilings breakable at no cut.
    Rtilde,
    /// Subboard without the last second-level cell.
    A,
    /// Subboard without the last first-level cell.
    B,
    /// Subboard without both.
    C,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct Weights {
    /// Evaluate at this square weight; needs --b.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<i64>,
    /// Evaluate at this domino weight; needs --a.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<i64>,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Largest board, in cells, the oracle may enumerate.
    #[arg(long, default_value_t = DEFAULT_CELL_LIMIT)]
    pub limit: usize,
    /// Acknowledge a --limit above the default.
    #[arg(long)]
    pub allow_large_limit: bool,
}

#[derive(Debug, Args)]
pub struct BoardArgs {
    #[arg(long)]
    pub q: Option<Span>,
    #[arg(long)]
    pub n: Option<Span>,
    #[arg(long, value_enum, default_value_t = VariantArg::Full)]
    pub variant: VariantArg,
    /// Path length for --variant path.
    #[arg(long)]
    pub m: Option<usize>,
    /// Attach second-level blocks at the far end of each column.
    #[arg(long)]
    pub mirror: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub q: Option<Span>,
    #[arg(long)]
    pub n: Option<Span>,
    #[arg(long, value_enum, default_value_t = VariantArg::Full)]
    pub variant: VariantArg,
    #[arg(long)]
    pub m: Option<usize>,
    /// Count only the tilings breakable at no cut.
    #[arg(long)]
    pub unbreakable: bool,
    #[arg(long, value_enum, default_value_t = Method::Oracle)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = ModeArg::Corrected)]
    pub mode: ModeArg,
    /// Also list the tilings (oracle only, JSON only).
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub weights: Weights,
    #[command(flatten)]
    pub limit: LimitArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    #[arg(long)]
    pub q: Span,
    #[arg(long)]
    pub n: Span,
    #[arg(long, value_enum, default_value_t = KindArg::R)]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value_t = Method::System)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = ModeArg::Corrected)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub weights: Weights,
    #[command(flatten)]
    pub limit: LimitArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(long)]
    pub q: Span,
    /// closed: explicit formulas; system: characteristic polynomial of the
    /// coefficient matrix; fib: Fibonacci forms.
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    pub method: Method,
    #[command(flatten)]
    pub weights: Weights,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "4..6")]
    pub q: Span,
    #[arg(long, default_value = "0..4")]
    pub n: Span,
    /// Weight points, e.g. "(1,1);(2,3)".
    #[arg(long)]
    pub points: Option<Points>,
    #[command(flatten)]
    pub limit: LimitArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Rendered output and exit status of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Limit(String),
    Internal(String),
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure::Usage(msg.into())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidQ(_) => Failure::Usage(format!("--q: {e}")),
            Error::InvalidLength { .. } => Failure::Usage(format!("--n/--m: {e}")),
            Error::InvalidRange(_) => Failure::Usage(format!("--n: {e}")),
            Error::PositionOutOfRange { .. } | Error::UnsupportedBoard(_) | Error::NegativeExponent { .. } => {
                Failure::Usage(e.to_string())
            }
            Error::LimitExceeded { .. } => Failure::Limit(format!("{e}; raise --limit with --allow-large-limit")),
            Error::BandwidthTooLarge { .. } => Failure::Limit(e.to_string()),
            Error::InvariantViolation(_) => Failure::Internal(e.to_string()),
        }
    }
}

type Run<T> = Result<T, Failure>;

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: EXIT_USAGE }
            } else {
                Outcome { stdout: text, stderr: String::new(), code: EXIT_OK }
            };
        }
    };
    match execute(&cli.command) {
        Ok((stdout, code)) => Outcome { stdout, stderr: String::new(), code },
        Err(f) => {
            let (msg, code) = match f {
                Failure::Usage(m) => (m, EXIT_USAGE),
                Failure::Limit(m) => (m, EXIT_LIMIT),
                Failure::Internal(m) => (m, EXIT_VERIFY_FAILED),
            };
            Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code }
        }
    }
}

fn execute(cmd: &Command) -> Run<(String, i32)> {
    match cmd {
        Command::Board(args) => board(args).map(|s| (s, EXIT_OK)),
        Command::Count(args) => count(args).map(|s| (s, EXIT_OK)),
        Command::Seq(args) => seq(args).map(|s| (s, EXIT_OK)),
        Command::Coeffs(args) => coeffs(args).map(|s| (s, EXIT_OK)),
        Command::Verify(args) => verify(args),
    }
}

fn oracle(args: &LimitArgs) -> Run<Oracle> {
    if args.limit > DEFAULT_CELL_LIMIT && !args.allow_large_limit {
        return Err(Failure::usage(format!(
            "--limit {} is above the default {DEFAULT_CELL_LIMIT}; pass --allow-large-limit to confirm",
            args.limit
        )));
    }
    Ok(Oracle::with_limit(args.limit))
}

/// The weight point, if any. `fib` only exists at `a = b = 1`.
fn point(w: &Weights, method: Method) -> Run<Option<(i64, i64)>> {
    let p = match (w.a, w.b) {
        (Some(a), Some(b)) => Some((a, b)),
        (None, None) => None,
        (Some(_), None) => return Err(Failure::usage("--a needs --b")),
        (None, Some(_)) => return Err(Failure::usage("--b needs --a")),
    };
    if method == Method::Fib {
        return match p {
            None | Some((1, 1)) => Ok(Some((1, 1))),
            Some(_) => Err(Failure::usage("--method fib is only defined at --a 1 --b 1")),
        };
    }
    Ok(p)
}

fn q_value(q: Option<Span>) -> Run<u32> {
    let q = q.ok_or_else(|| Failure::usage("--q is required"))?.single("--q")?;
    u32::try_from(q).map_err(|_| Failure::usage(format!("--q {q} is out of range")))
}

fn n_value(n: Option<Span>) -> Run<usize> {
    let n = n.ok_or_else(|| Failure::usage("--n is required"))?.single("--n")?;
    usize::try_from(n).map_err(|_| Failure::usage(format!("--n {n} is out of range")))
}

fn board_spec(q: Option<Span>, n: Option<Span>, variant: VariantArg, m: Option<usize>) -> Run<BoardSpec> {
    if variant == VariantArg::Path {
        if q.is_some() || n.is_some() {
            return Err(Failure::usage("--variant path takes --m, not --q/--n"));
        }
        let m = m.ok_or_else(|| Failure::usage("--variant path needs --m"))?;
        return Ok(BoardSpec::path(m));
    }
    if m.is_some() {
        return Err(Failure::usage("--m only applies to --variant path"));
    }
    let variant = match variant {
        VariantArg::Full => Variant::Full,
        VariantArg::A => Variant::A,
        VariantArg::B => Variant::B,
        VariantArg::C => Variant::C,
        VariantArg::Path => unreachable!(),
    };
    Ok(BoardSpec::new(q_value(q)?, n_value(n)?, variant))
}

fn board(args: &BoardArgs) -> Run<String> {
    let spec = board_spec(args.q, args.n, args.variant, args.m)?;
    let mut g = build_board(spec)?;
    if args.mirror {
        g = g.mirror()?;
    }
    match args.format {
        Format::Json => Ok(formats::to_string(&formats::graph(&g))),
        Format::Text => Ok(board_text(&g)),
        Format::Csv => Err(Failure::usage("--format csv is not available for board")),
    }
}

fn board_text(g: &CellGraph) -> String {
    let stats = g.stats();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "cells {} (level 1: {}, level 2: {}), edges {}, cuts {}",
        g.cell_count(),
        stats.first_level,
        stats.second_level,
        stats.edges,
        stats.cuts
    );
    for c in g.cells() {
        let name = if c.level.number() == 1 { 's' } else { 't' };
        let nbrs: Vec<String> = g.neighbors(c.id).iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{:>3} {name}{:<4} column {:<3} neighbors {}", c.id, c.index, c.column, nbrs.join(" "));
    }
    out
}

fn render_value(p: &BiPoly, point: Option<(i64, i64)>) -> Value {
    match point {
        Some((a, b)) => formats::int(&p.eval_i64(a, b)),
        None => formats::poly(p),
    }
}

fn count(args: &CountArgs) -> Run<String> {
    let at = point(&args.weights, args.method)?;
    let spec = board_spec(args.q, args.n, args.variant, args.m)?;
    if args.list && args.method != Method::Oracle {
        return Err(Failure::usage("--list needs --method oracle"));
    }
    if args.list && args.format != Format::Json {
        return Err(Failure::usage("--list needs --format json"));
    }
    let full = spec.variant == Variant::Full;
    if args.unbreakable && !full {
        return Err(Failure::usage("--unbreakable needs --variant full"));
    }
    let oracle = oracle(&args.limit)?;
    let graph = build_board(spec)?;
    let kind = match (spec.variant, args.unbreakable) {
        (_, true) => KindArg::Rtilde,
        (Variant::A, _) => KindArg::A,
        (Variant::B, _) => KindArg::B,
        (Variant::C, _) => KindArg::C,
        _ => KindArg::R,
    };
    let mut tilings = None;
    let value = match args.method {
        Method::Oracle => {
            if args.list {
                tilings = Some(oracle.enumerate(&graph)?);
            }
            if args.unbreakable {
                oracle.unbreakable_count(&graph)?
            } else {
                oracle.weighted_count(&graph)?
            }
        }
        Method::Frontier => {
            if args.unbreakable {
                return Err(Failure::usage("--method frontier does not count unbreakable tilings"));
            }
            frontier::weighted_count(&graph)?
        }
        method => {
            if matches!(spec.variant, Variant::Path(_)) {
                return Err(Failure::usage(format!("--method {} does not cover paths", method_name(method))));
            }
            let table = sequence(spec.q, spec.n, kind, method, args.mode.into())?;
            table.values()[spec.n].clone()
        }
    };
    match args.format {
        Format::Text => Ok(match at {
            Some((a, b)) => format!("{}\n", value.eval_i64(a, b)),
            None => format!("{value}\n"),
        }),
        Format::Csv => match at {
            Some((a, b)) => Ok(format!("{}\n", value.eval_i64(a, b))),
            None => Err(Failure::usage("--format csv needs --a and --b")),
        },
        Format::Json => {
            let mut out = formats::graph(&graph);
            let obj = out.as_object_mut().expect("graph renders as an object");
            for key in ["mirrored", "cells", "edges", "cuts"] {
                obj.remove(key);
            }
            obj.insert("cells".into(), json!(graph.cell_count()));
            obj.insert("method".into(), json!(method_name(args.method)));
            obj.insert("unbreakable".into(), json!(args.unbreakable));
            if let Some((a, b)) = at {
                obj.insert("point".into(), json!([a, b]));
            }
            obj.insert("value".into(), render_value(&value, at));
            if let Some(t) = tilings {
                obj.insert("tilings".into(), t.iter().map(formats::tiling).collect());
            }
            Ok(formats::to_string(&out))
        }
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Oracle => "oracle",
        Method::Frontier => "frontier",
        Method::System => "system",
        Method::Closed => "closed",
        Method::Fib => "fib",
    }
}

fn kind_of(k: KindArg, method: Method) -> Kind {
    match (k, method) {
        (KindArg::R, Method::Fib) => Kind::SmallR,
        (KindArg::Rtilde, Method::Fib) => Kind::SmallRTilde,
        (KindArg::R, _) => Kind::R,
        (KindArg::Rtilde, _) => Kind::RTilde,
        (KindArg::A, _) => Kind::A,
        (KindArg::B, _) => Kind::B,
        (KindArg::C, _) => Kind::C,
    }
}

/// Table of `kind` from the non-enumerative `method`, indices `0..=n_max`.
fn sequence(q: u32, n_max: usize, kind: KindArg, method: Method, mode: Mode) -> Run<SequenceTable> {
    let unsupported = || {
        Failure::usage(format!(
            "--method {} does not produce kind {}",
            method_name(method),
            kind_of(kind, method).name()
        ))
    };
    Ok(match (method, kind) {
        (Method::System, KindArg::Rtilde) => unbreakable_system_tables(q, n_max.max(1))?.r,
        (Method::System, k) => {
            let t = system_tables(q, n_max)?;
            match k {
                KindArg::A => t.a,
                KindArg::B => t.b,
                KindArg::C => t.c,
                _ => t.r,
            }
        }
        (Method::Closed, KindArg::R) => closed_r_table(q, n_max)?,
        (Method::Closed, KindArg::Rtilde) => unbreakable_closed_table(q, n_max.max(1), mode)?,
        (Method::Fib, KindArg::R) => fib_r_table(q, n_max)?,
        (Method::Fib, KindArg::Rtilde) => fib_unbreakable_table(q, n_max.max(1), mode)?,
        _ => return Err(unsupported()),
    })
}

fn seq(args: &SeqArgs) -> Run<String> {
    let at = point(&args.weights, args.method)?;
    let q = u32::try_from(args.q.single("--q")?).map_err(|_| Failure::usage("--q is out of range"))?;
    let (lo, hi) = (args.n.lo as usize, args.n.hi as usize);
    if args.kind != KindArg::R && lo == 0 && !args.n.is_empty() {
        return Err(Failure::usage(format!("--n: kind {} starts at n = 1", kind_of(args.kind, args.method).name())));
    }
    let oracle = oracle(&args.limit)?;
    let ns = lo..=hi;
    let (provenance, values): (Provenance, Vec<BiPoly>) = match args.method {
        Method::Oracle | Method::Frontier => {
            let variant = match args.kind {
                KindArg::A => Variant::A,
                KindArg::B => Variant::B,
                KindArg::C => Variant::C,
                _ => Variant::Full,
            };
            let mut values = Vec::new();
            for n in ns {
                let g = build_board(BoardSpec::new(q, n, variant))?;
                values.push(match (args.method, args.kind) {
                    (Method::Oracle, KindArg::Rtilde) => oracle.unbreakable_count(&g)?,
                    (Method::Oracle, _) => oracle.weighted_count(&g)?,
                    (_, KindArg::Rtilde) => {
                        return Err(Failure::usage("--method frontier does not count unbreakable tilings"))
                    }
                    _ => frontier::weighted_count(&g)?,
                });
            }
            let provenance = if args.method == Method::Oracle { Provenance::Oracle } else { Provenance::Frontier };
            (provenance, values)
        }
        method => {
            if args.n.is_empty() {
                mosaic_tilings::recurrence::check_q(q)?;
                (provenance_of(method), Vec::new())
            } else {
                let t = sequence(q, hi, args.kind, method, args.mode.into())?;
                (t.provenance, t.values()[lo..=hi].to_vec())
            }
        }
    };
    let head = TableHead { q, kind: kind_of(args.kind, args.method), provenance, start: lo };
    let evaluated: Option<Vec<BigInt>> = at.map(|(a, b)| values.iter().map(|p| p.eval_i64(a, b)).collect());
    match args.format {
        Format::Json => {
            let v = match &evaluated {
                Some(ev) => formats::table(&head, Values::Evaluated(ev), at),
                None => formats::table(&head, Values::Symbolic(&values), None),
            };
            Ok(formats::to_string(&v))
        }
        Format::Csv => match &evaluated {
            Some(ev) => Ok(format!("{}\n", formats::csv_line(ev))),
            None => Err(Failure::usage("--format csv needs --a and --b")),
        },
        Format::Text => {
            let mut out = String::new();
            for (i, p) in values.iter().enumerate() {
                let _ = match at {
                    Some((a, b)) => writeln!(out, "{} {}", lo + i, p.eval_i64(a, b)),
                    None => writeln!(out, "{} {p}", lo + i),
                };
            }
            Ok(out)
        }
    }
}

fn provenance_of(m: Method) -> Provenance {
    match m {
        Method::Oracle => Provenance::Oracle,
        Method::Frontier => Provenance::Frontier,
        Method::System => Provenance::System,
        Method::Closed => Provenance::Closed,
        Method::Fib => Provenance::Fib,
    }
}

fn coeffs(args: &CoeffsArgs) -> Run<String> {
    let at = point(&args.weights, args.method)?;
    let mut rows: Vec<(u32, Option<CoeffSet>, Option<[BigInt; 4]>)> = Vec::new();
    for q in args.q.lo..=args.q.hi {
        let q = u32::try_from(q).map_err(|_| Failure::usage(format!("--q {q} is out of range")))?;
        let set = match args.method {
            Method::Closed => closed_coeffs(q)?,
            Method::System => {
                let ch = characteristic_coeffs(&coefficient_matrix(q)?);
                CoeffSet { q, alpha: -ch.c3, beta: -ch.c2, gamma: -ch.c1, delta: -ch.c0 }
            }
            Method::Fib => {
                rows.push((q, None, Some(fib_coeffs(q)?)));
                continue;
            }
            m => return Err(Failure::usage(format!("--method {} does not produce coefficients", method_name(m)))),
        };
        let ev = at.map(|(a, b)| set.eval_i64(a, b));
        rows.push((q, Some(set), ev));
    }
    match args.format {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(q, set, ev)| match (ev, at, set) {
                    (Some(ev), Some(p), _) => formats::coeffs_evaluated(*q, ev, p),
                    (_, _, Some(set)) => formats::coeffs(set),
                    _ => unreachable!("fib rows always carry values"),
                })
                .collect();
            Ok(formats::to_string(&Value::Array(items)))
        }
        Format::Csv => {
            if at.is_none() {
                return Err(Failure::usage("--format csv needs --a and --b"));
            }
            let mut out = String::from("q,alpha,beta,gamma,delta\n");
            for (q, _, ev) in &rows {
                let ev = ev.as_ref().expect("evaluated at the requested point");
                let _ = writeln!(out, "{q},{}", formats::csv_line(ev));
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            for (q, set, ev) in &rows {
                let names = ["alpha", "beta", "gamma", "delta"];
                match (ev, set) {
                    (Some(ev), _) => {
                        for (name, v) in names.iter().zip(ev) {
                            let _ = writeln!(out, "q={q} {name} = {v}");
                        }
                    }
                    (None, Some(set)) => {
                        for (name, v) in names.iter().zip(set.as_array()) {
                            let _ = writeln!(out, "q={q} {name} = {v}");
                        }
                    }
                    (None, None) => unreachable!("fib rows always carry values"),
                }
            }
            Ok(out)
        }
    }
}

fn verify(args: &VerifyArgs) -> Run<(String, i32)> {
    let qs = (args.q.lo..=args.q.hi)
        .map(|q| u32::try_from(q).map_err(|_| Failure::usage(format!("--q {q} is out of range"))))
        .collect::<Run<Vec<_>>>()?;
    let n_range = (!args.n.is_empty()).then_some((args.n.lo as usize, args.n.hi as usize));
    let points = args.points.clone().map_or_else(|| DEFAULT_POINTS.to_vec(), |p| p.0);
    let mut config = CrossCheckConfig::new(qs, n_range, points);
    config.oracle = oracle(&args.limit)?;
    let bundle = crosscheck_all(&config)?;
    let code = if bundle.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
    let out = match args.format {
        Format::Json => formats::to_string(&formats::bundle(&bundle)),
        Format::Text => {
            let mut out = String::new();
            for r in &bundle.reports {
                let _ = writeln!(out, "{r}");
                if let Some(note) = &r.note {
                    let _ = writeln!(out, "    {note}");
                }
            }
            let verdict = if bundle.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{verdict}: {} legs, {} checks", bundle.reports.len(), bundle.checked());
            out
        }
        Format::Csv => return Err(Failure::usage("--format csv is not available for verify")),
    };
    Ok((out, code))
}

//! Command-line front end: `eval`, `verify` and `table`.

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::json;

use crate::characters::{binomial, gauss_sum, jacobi_sum, std_chars, MulChar};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem, MAX_FIELD_ORDER};
use crate::greene::{greene_f, HypFParams};
use crate::gseries::{default_precision, p_g, GParams, GValue};
use crate::oracle::phi_quadratic_sum;
use crate::padic::prime_power_modulus;
use crate::theorems::{
    run_suite, special_value_table, Report, SessionOptions, SuiteConfig, TheoremId,
};

/// Errors surfaced by [`run`].
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "ffhyper",
    version,
    about = "Finite-field and p-adic hypergeometric functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity exactly.
    Eval(EvalArgs),
    /// Run identity checks over a sweep of fields and write report files.
    Verify(VerifyArgs),
    /// Tabulate a special-value identity over a range of primes.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subject {
    Gauss,
    Jacobi,
    Binomial,
    GreeneF,
    Pg,
    Charsum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub subject: Subject,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    /// Character for `gauss`: eps, phi, chi3, chi4, chi4^3, T^k.
    #[arg(long)]
    pub chi: Option<String>,
    #[arg(long = "A")]
    pub char_a: Option<String>,
    #[arg(long = "B")]
    pub char_b: Option<String>,
    /// Comma-separated upper characters for `greene-f`.
    #[arg(long)]
    pub upper: Option<String>,
    /// Comma-separated lower characters for `greene-f`.
    #[arg(long)]
    pub lower: Option<String>,
    /// Field element: an integer, `a/b`, or `c0,c1,...` coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Comma-separated rationals for `pg`.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long, default_value_t = crate::characters::DEFAULT_GAUSS_MAX_Q)]
    pub gauss_max: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated theorem ids, or ALL.
    #[arg(long, default_value = "ALL")]
    pub ids: String,
    /// Prime range `lo..hi` (inclusive) or a single prime.
    #[arg(long, default_value = "3..61")]
    pub primes: String,
    /// Comma-separated extension degrees.
    #[arg(long, default_value = "1")]
    pub r: String,
    /// Output directory; defaults to `$FFHYPER_OUT`, then the working directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value_t = crate::characters::DEFAULT_GAUSS_MAX_Q)]
    pub gauss_max: u64,
    #[arg(long)]
    pub precision: Option<u32>,
    /// Largest field order in the sweep.
    #[arg(long, default_value_t = MAX_FIELD_ORDER)]
    pub max_q: u64,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub id: String,
    #[arg(long, default_value = "3..61")]
    pub primes: String,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Also write the table to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub precision: Option<u32>,
}

/// `eps`, `phi`, `chi3`, `chi3^2`, `chi4`, `chi4^3`, `T`, `T^k` (also `T^-k`).
pub fn parse_char(ctx: &FieldCtx, s: &str) -> Result<MulChar> {
    let sc = std_chars(ctx);
    let s = s.trim();
    let (base, exp) = match s.split_once('^') {
        Some((b, e)) => (
            b,
            e.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?,
        ),
        None => (s, 1),
    };
    let missing = |name: &str| Error::Parse(format!("{name} does not exist over F_{}", ctx.q()));
    let c = match base.to_ascii_lowercase().as_str() {
        "eps" | "e" => sc.eps,
        "phi" => sc.phi,
        "t" => sc.t,
        "chi3" => sc.chi3.ok_or_else(|| missing("chi3"))?,
        "chi4" => sc.chi4.ok_or_else(|| missing("chi4"))?,
        _ => return Err(Error::Parse(format!("unknown character {s:?}"))),
    };
    Ok(c.pow(exp))
}

pub fn parse_chars(ctx: &FieldCtx, s: &str) -> Result<Vec<MulChar>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_char(ctx, t))
        .collect()
}

/// An integer, a fraction `a/b` of integers, or power-basis coordinates.
pub fn parse_elem(ctx: &FieldCtx, s: &str) -> Result<FqElem> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    let int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad field element {s:?}")))
    };
    if s.contains(',') {
        let c: Vec<i64> = s.split(',').map(int).collect::<Result<_>>()?;
        return ctx.from_coeffs(&c);
    }
    match s.split_once('/') {
        Some((a, b)) => ctx.div(ctx.from_int(int(a)?), ctx.from_int(int(b)?)),
        None => Ok(ctx.from_int(int(s)?)),
    }
}

pub fn parse_ratios(s: &str) -> Result<Vec<Ratio<i64>>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<Ratio<i64>>()
                .map_err(|_| Error::Parse(format!("bad rational {t:?}")))
        })
        .collect()
}

/// `lo..hi`, `lo..=hi` (both inclusive) or a single number.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>> {
    let bad = || Error::Parse(format!("bad range {s:?}"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    let r = match s.split_once("..") {
        Some((lo, hi)) => num(lo)?..=num(hi.trim_start_matches('='))?,
        None => {
            let v = num(s)?;
            v..=v
        }
    };
    if r.start() > r.end() {
        return Err(bad());
    }
    Ok(r)
}

pub fn parse_ids(s: &str) -> Result<Vec<TheoremId>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(TheoremId::ALL.to_vec());
    }
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

pub fn parse_degrees(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| match t.trim().parse::<u32>() {
            Ok(r) if r >= 1 => Ok(r),
            _ => Err(Error::Parse(format!("bad degree {t:?}"))),
        })
        .collect()
}

fn require<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref()
        .ok_or_else(|| Error::Parse(format!("--{flag} is required")))
}

fn gvalue_string(g: &GValue) -> String {
    if g.is_zero() {
        return "0".into();
    }
    match g.integral() {
        Some((ring, x)) => match ring.to_integer(&x) {
            Some(v) => v.to_string(),
            None => format!("{:?}", x.coeffs()),
        },
        None => g.to_string(),
    }
}

/// Value plus provenance lines for `eval`.
pub fn eval(args: &EvalArgs) -> Result<String> {
    let ctx = FieldCtx::new(args.p, args.r)?;
    let mut meta = vec![
        (
            "field".to_string(),
            format!("F_{} (p={}, r={})", ctx.q(), ctx.p(), ctx.r()),
        ),
        ("modulus".into(), ctx.format_modulus()),
        ("generator".into(), ctx.format(ctx.generator())),
    ];
    let value = match args.subject {
        Subject::Gauss => {
            let chi = parse_char(&ctx, require(&args.chi, "chi")?)?;
            meta.push((
                "ring".into(),
                format!("Z[zeta_{}]", crate::characters::gauss_order(&ctx)),
            ));
            gauss_sum(&ctx, chi, args.gauss_max)?.to_string()
        }
        Subject::Jacobi => {
            let a = parse_char(&ctx, require(&args.char_a, "A")?)?;
            let b = parse_char(&ctx, require(&args.char_b, "B")?)?;
            jacobi_sum(&ctx, a, b).to_string()
        }
        Subject::Binomial => {
            let a = parse_char(&ctx, require(&args.char_a, "A")?)?;
            let b = parse_char(&ctx, require(&args.char_b, "B")?)?;
            binomial(&ctx, a, b).to_string()
        }
        Subject::GreeneF => {
            let upper = parse_chars(&ctx, require(&args.upper, "upper")?)?;
            let lower = parse_chars(&ctx, args.lower.as_deref().unwrap_or(""))?;
            let x = parse_elem(&ctx, require(&args.x, "x")?)?;
            greene_f(&ctx, &HypFParams::new(upper, lower)?, x).to_string()
        }
        Subject::Pg => {
            let a = parse_ratios(require(&args.a, "a")?)?;
            let b = match &args.b {
                Some(b) => parse_ratios(b)?,
                None => vec![Ratio::from_integer(0); a.len()],
            };
            let params = GParams::new(a, b)?;
            let t = parse_elem(&ctx, require(&args.t, "t")?)?;
            let n = args.precision.unwrap_or_else(|| default_precision(&ctx));
            let g = p_g(&params, t, &ctx, n)?;
            meta.push(("function".into(), params.to_string()));
            meta.push(("precision".into(), format!("N={n}")));
            meta.push((
                "valuation".into(),
                g.valuation().map_or("inf".into(), |v| v.to_string()),
            ));
            gvalue_string(&g)
        }
        Subject::Charsum => {
            let x = parse_elem(&ctx, require(&args.x, "x")?)?;
            phi_quadratic_sum(&ctx, x).to_string()
        }
    };
    Ok(match args.format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            for (k, v) in meta {
                obj.insert(k, json!(v));
            }
            obj.insert("value".into(), json!(value));
            serde_json::to_string_pretty(&obj).expect("serializes") + "\n"
        }
        Format::Csv => {
            let keys: Vec<_> = meta.iter().map(|(k, _)| k.clone()).collect();
            let vals: Vec<_> = meta.iter().map(|(_, v)| v.clone()).collect();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(keys.iter().map(String::as_str).chain(["value"]))
                .and_then(|_| {
                    w.write_record(vals.iter().map(String::as_str).chain([value.as_str()]))
                })
                .map_err(|e| Error::Parse(e.to_string()))?;
            String::from_utf8(w.into_inner().expect("in memory")).expect("utf-8")
        }
        Format::Text => {
            let mut s = String::new();
            for (k, v) in meta {
                s.push_str(&format!("# {k}: {v}\n"));
            }
            s.push_str(&value);
            s.push('\n');
            s
        }
    })
}

fn check_budgets(
    primes: &RangeInclusive<u64>,
    degrees: &[u32],
    precision: Option<u32>,
) -> Result<()> {
    let hi = *primes.end();
    if hi > MAX_FIELD_ORDER {
        return Err(Error::FieldTooLarge {
            p: hi,
            r: 1,
            max: MAX_FIELD_ORDER,
        });
    }
    if let (Some(n), Some(p)) = (
        precision,
        crate::arith::odd_primes_in(*primes.start(), hi).last(),
    ) {
        prime_power_modulus(*p, n)?;
    }
    if degrees.is_empty() {
        return Err(Error::ZeroDegree);
    }
    Ok(())
}

fn out_dir(arg: &Option<PathBuf>) -> PathBuf {
    arg.clone()
        .or_else(|| std::env::var_os("FFHYPER_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn print_report(report: &Report, format: Format, out: &mut impl Write) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", report.to_json()),
        Format::Csv => write!(out, "{}", report.to_csv()),
        Format::Text => write!(out, "{}", report.to_text()),
    }
}

/// Rows printed to the terminal before switching to per-id counts.
const TEXT_ROW_LIMIT: usize = 200;

fn per_id_summary(report: &Report) -> String {
    let mut s = format!(
        "{:<10} {:>8} {:>8} {:>8}\n",
        "id", "holds", "fails", "skipped"
    );
    for id in &report.meta.ids {
        let rows: Vec<_> = report
            .results
            .iter()
            .filter(|r| r.id == *id)
            .cloned()
            .collect();
        let c = crate::theorems::Summary::of(&rows);
        s.push_str(&format!(
            "{:<10} {:>8} {:>8} {:>8}\n",
            id.as_str(),
            c.holds,
            c.fails,
            c.skipped
        ));
    }
    s.push_str(&format!(
        "holds {}  fails {}  skipped {}\n",
        report.summary.holds, report.summary.fails, report.summary.skipped
    ));
    s
}

/// Runs the command; the returned value is the process exit code.
pub fn run(cli: Cli) -> std::result::Result<i32, CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Eval(args) => {
            write!(out, "{}", eval(&args)?)?;
            Ok(0)
        }
        Command::Verify(args) => {
            let primes = parse_range(&args.primes)?;
            let degrees = parse_degrees(&args.r)?;
            let ids = parse_ids(&args.ids)?;
            check_budgets(&primes, &degrees, args.precision)?;
            let config = SuiteConfig {
                primes,
                degrees,
                ids,
                opts: SessionOptions {
                    precision: args.precision,
                    gauss_max_q: args.gauss_max,
                },
                jobs: args.jobs,
                max_q: args.max_q,
            };
            let report = run_suite(&config)?;
            let dir = out_dir(&args.out);
            fs::create_dir_all(&dir)?;
            fs::write(dir.join("report.json"), report.to_json())?;
            fs::write(dir.join("report.csv"), report.to_csv())?;
            if args.format == Format::Text && report.results.len() > TEXT_ROW_LIMIT {
                write!(out, "{}", per_id_summary(&report))?;
            } else {
                print_report(&report, args.format, &mut out)?;
            }
            let mut err = std::io::stderr().lock();
            for row in report.failures() {
                writeln!(
                    err,
                    "FAIL {}",
                    serde_json::to_string(row).expect("serializes")
                )?;
            }
            Ok(if report.summary.fails == 0 { 0 } else { 1 })
        }
        Command::Table(args) => {
            let id: TheoremId = args.id.parse()?;
            let primes = parse_range(&args.primes)?;
            check_budgets(&primes, &[1], args.precision)?;
            let opts = SessionOptions {
                precision: args.precision,
                ..SessionOptions::default()
            };
            let report = special_value_table(id, primes, opts)?;
            let mut buf = Vec::new();
            print_report(&report, args.format, &mut buf)?;
            if let Some(path) = &args.out {
                fs::write(path, &buf)?;
            }
            out.write_all(&buf)?;
            Ok(if report.summary.fails == 0 { 0 } else { 1 })
        }
    }
}

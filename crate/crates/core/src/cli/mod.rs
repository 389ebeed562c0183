//! Command-line front end: expression evaluation, traces, sweeps, series
//! expansion and point counts.

pub mod eval;
pub mod format;
pub mod parse;

use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

pub use eval::eval_expr;
pub use format::{from_json, json, latex, render, render_trace, Format};
pub use parse::{parse, Expr, ParseError};

use crate::classes::{class_of, verify_inverse, GroupSpec};
use crate::recursion::{recurse_bo, recurse_bso, verify_theorem, verify_traces};
use crate::ring::MotivicClass;
use crate::series::expand;
use crate::sweep::SweepReport;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_NOT_A_UNIT: i32 = 2;
pub const EXIT_POLE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Default truncation depth of `expand` below the leading term.
pub const DEFAULT_EXPAND_DEPTH: i64 = 24;

#[derive(Parser, Debug)]
#[command(
    name = "motivic",
    version,
    about = "Exact classes in Z[L][L^-1, (L^n-1)^-1]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression to its canonical class.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
    /// Print the recursion steps that produce {BO_n} or {BSO_n}.
    Trace {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
    /// Run a verification sweep over 2..=max (0..=max for the recursion checks).
    Verify {
        #[arg(long, value_enum)]
        check: CheckArg,
        #[arg(long)]
        max: u32,
    },
    /// Expand an expression in descending powers of L.
    Expand {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Lowest exponent kept; defaults to 24 below the leading term.
        #[arg(long, allow_hyphen_values = true)]
        order: Option<i64>,
    },
    /// Evaluate an expression at L = q.
    Count {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// An integer or a fraction `a/b`.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// One canonical closed-form class per line for n = 0..=max.
    Table {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Plain,
    Latex,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Plain => Format::Plain,
            FormatArg::Latex => Format::Latex,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupArg {
    #[value(name = "O")]
    O,
    #[value(name = "SO")]
    SO,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckArg {
    Inverse,
    Theorem,
    Recursion,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Bo,
    Bso,
    So,
}

/// A failed command: exit code and message for the error stream.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotAUnit(_) => EXIT_NOT_A_UNIT,
            Error::PoleAtQ(_) => EXIT_POLE,
            Error::UnsupportedSpec(_) | Error::InvalidArgument(_) => EXIT_PARSE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_PARSE,
        message,
    }
}

fn check_bound(what: &str, n: u32) -> Result<(), Failure> {
    if n > parse::MAX_ARGUMENT {
        return Err(usage(format!("{what} exceeds {}", parse::MAX_ARGUMENT)));
    }
    Ok(())
}

fn eval_text(text: &str) -> Result<MotivicClass, Failure> {
    Ok(eval_expr(&parse(text)?)?)
}

fn parse_rational(text: &str) -> Result<BigRational, Failure> {
    let q = BigRational::from_str(text.trim())
        .map_err(|_| usage(format!("`{text}` is not an integer or fraction")))?;
    Ok(q)
}

fn report_lines(report: &SweepReport) -> Result<String, Failure> {
    let (lo, hi) = match (report.results.first(), report.results.last()) {
        (Some((lo, _)), Some((hi, _))) => (*lo, *hi),
        _ => return Ok(format!("{}: nothing checked\n", report.name)),
    };
    if let Some((n, reason)) = report.first_failure() {
        return Err(Failure {
            code: EXIT_VERIFY,
            message: format!("{}: FAILED at n = {n}: {reason}", report.name),
        });
    }
    Ok(format!(
        "{}: ok for n = {lo}..={hi} ({} checks)\n",
        report.name,
        report.results.len()
    ))
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Eval { expr, format } => {
            let class = eval_text(&expr)?;
            Ok(format!("{}\n", render(&class, format.into())))
        }
        Command::Trace { group, n, format } => {
            check_bound("n", n)?;
            let trace = match group {
                GroupArg::O => recurse_bo(n).1,
                GroupArg::SO => recurse_bso(n)?.1,
            };
            Ok(render_trace(&trace, format.into()))
        }
        Command::Verify { check, max } => {
            check_bound("max", max)?;
            let report = match check {
                CheckArg::Inverse => verify_inverse(max)?,
                CheckArg::Theorem => verify_theorem(max)?,
                CheckArg::Recursion => verify_traces(max)?,
            };
            report_lines(&report)
        }
        Command::Expand { expr, order } => {
            let class = eval_text(&expr)?;
            let leading = class.degree().finite().unwrap_or(0);
            let order = order.unwrap_or(leading - DEFAULT_EXPAND_DEPTH);
            if leading.saturating_sub(order) > 1 << 16 {
                return Err(usage(format!(
                    "order {order} is too far below the leading exponent"
                )));
            }
            let tail = expand(&class, order);
            let exact =
                class.denominator().is_empty() && (class.is_zero() || class.lpow() >= order);
            if exact {
                Ok(format!("{tail}\n"))
            } else {
                Ok(format!("{tail} + O(L^{})\n", order - 1))
            }
        }
        Command::Count { expr, q } => {
            let class = eval_text(&expr)?;
            let q = parse_rational(&q)?;
            let value = class.eval_at(&q)?;
            Ok(format!("{value}\n"))
        }
        Command::Table { kind, max, format } => {
            check_bound("max", max)?;
            let mut out = String::new();
            for n in 0..=max {
                let spec = match kind {
                    KindArg::Bo => GroupSpec::BO(n),
                    KindArg::Bso => GroupSpec::BSO(n),
                    KindArg::So => GroupSpec::SO(n),
                };
                let class = class_of(spec)?;
                let line = match format {
                    FormatArg::Json => serde_json::json!({
                        "name": spec.to_string(),
                        "class": serde_json::from_str::<serde_json::Value>(&json(&class))
                            .expect("own output is valid JSON"),
                    })
                    .to_string(),
                    _ => format!("{spec} = {}", render(&class, format.into())),
                };
                out.push_str(&line);
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
///
/// Results go to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                EXIT_PARSE
            } else {
                let _ = write!(stdout, "{rendered}");
                EXIT_OK
            };
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

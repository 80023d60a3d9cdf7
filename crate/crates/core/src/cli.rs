//! Command-line driver. [`run`] parses arguments and renders output into
//! strings; `main` only prints them and exits with the returned code.
//!
//! Exit codes: 0 when everything checked passes, 1 when a verification finds a
//! mismatch, 2 on usage errors.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::asymptotics::{self, DEFAULT_DIGITS};
use crate::error::Error;
use crate::genfun::{self, VerificationReport};
use crate::partition::Partition;
use crate::series::IntSeries;
use crate::tower::{self, Modulus};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "coretower",
    version,
    about = "t-core towers and exact verification of their generating functions"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,

    /// Working precision, in decimal digits, for asymptotic evaluations.
    #[arg(long, env = "CORETOWER_PRECISION", default_value_t = DEFAULT_DIGITS, global = true)]
    pub precision: usize,

    /// Largest order for which series are built by enumeration.
    #[arg(long, default_value_t = 30, global = true)]
    pub brute_ceiling: usize,

    /// Worker threads for brute-force enumeration.
    #[arg(long, default_value_t = 1, global = true)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The t-core of a partition.
    Core(PartitionArgs),
    /// The t-quotient of a partition.
    Quotient(PartitionArgs),
    /// The t-core pre-tower and tower, with row sizes and the defect.
    Tower(PartitionArgs),
    /// Coefficients of a generating function.
    Series(SeriesArgs),
    /// Congruence, recursion and monotonicity checks.
    Verify(VerifyArgs),
    /// Asymptotic comparisons.
    #[command(subcommand)]
    Asympt(AsymptCommand),
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[arg(long)]
    pub t: usize,
    /// Comma-separated parts, no whitespace; empty for ∅.
    #[arg(default_value = "", allow_hyphen_values = true)]
    pub partition: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    #[value(name = "T")]
    T,
    #[value(name = "D")]
    D,
    #[value(name = "cores")]
    Cores,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Closed,
    Brute,
    Both,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(value_enum)]
    pub kind: SeriesKind,
    #[arg(long, default_value_t = 0)]
    pub j: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 100)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = Mode::Closed)]
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Congruence,
    Recursion,
    Monotone,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: Check,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 100)]
    pub order: usize,
}

#[derive(Debug, Subcommand)]
pub enum AsymptCommand {
    /// Exact defect totals against their predicted growth.
    Defect {
        #[arg(long)]
        t: usize,
        #[arg(long, value_delimiter = ',', default_value = "100,200,400")]
        samples: Vec<usize>,
    },
    /// Residual of the inversion formula for G₂⁰(q^m) at q = e^{-ε}.
    Transform {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        eps: f64,
    },
    /// Ratio of 1/(q)_∞ at q = e^{-ε} to its leading asymptotic.
    Eta {
        #[arg(long)]
        eps: f64,
    },
}

/// What the binary should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_PASS,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build()
    {
        Ok(p) => p,
        Err(e) => return Outcome::usage(e),
    };
    pool.install(|| dispatch(&cli))
}

fn modulus(t: usize) -> Result<Modulus, Outcome> {
    Modulus::new(t).map_err(Outcome::usage)
}

fn dispatch(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Core(a) => core_cmd(cli, a),
        Command::Quotient(a) => quotient_cmd(cli, a),
        Command::Tower(a) => tower_cmd(cli, a),
        Command::Series(a) => series_cmd(cli, a),
        Command::Verify(a) => verify_cmd(cli, a),
        Command::Asympt(a) => asympt_cmd(cli, a),
    };
    result.unwrap_or_else(|o| o)
}

fn parse_partition(s: &str) -> Result<Partition, Outcome> {
    Partition::parse(s).map_err(Outcome::usage)
}

fn comma_list(p: &Partition) -> String {
    if p.is_empty() {
        "∅".to_string()
    } else {
        p.parts()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn spaced(row: &[Partition]) -> String {
    row.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("  ")
}

fn core_cmd(cli: &Cli, a: &PartitionArgs) -> Result<Outcome, Outcome> {
    let t = modulus(a.t)?;
    let lambda = parse_partition(&a.partition)?;
    let core = tower::t_core(&lambda, t);
    let out = match cli.format {
        Format::Json => {
            json!({ "t": t.get(), "partition": lambda, "core": core }).to_string() + "\n"
        }
        Format::Csv => format!(
            "partition,core\n\"{}\",\"{}\"\n",
            comma_list(&lambda),
            comma_list(&core)
        ),
        Format::Plain => format!("{core}\n"),
    };
    Ok(Outcome::ok(out))
}

fn quotient_cmd(cli: &Cli, a: &PartitionArgs) -> Result<Outcome, Outcome> {
    let t = modulus(a.t)?;
    let lambda = parse_partition(&a.partition)?;
    let quotient = tower::t_quotient(&lambda, t);
    let out = match cli.format {
        Format::Json => {
            json!({ "t": t.get(), "partition": lambda, "quotient": quotient }).to_string() + "\n"
        }
        Format::Csv => {
            let mut s = String::from("component,partition\n");
            for (r, q) in quotient.iter().enumerate() {
                let _ = writeln!(s, "{r},\"{}\"", comma_list(q));
            }
            s
        }
        Format::Plain => spaced(&quotient) + "\n",
    };
    Ok(Outcome::ok(out))
}

fn tower_cmd(cli: &Cli, a: &PartitionArgs) -> Result<Outcome, Outcome> {
    let t = modulus(a.t)?;
    let lambda = parse_partition(&a.partition)?;
    let tw = tower::core_tower(&lambda, t).map_err(Outcome::usage)?;
    let pre: Vec<Vec<Partition>> = (0..=tw.height())
        .map(|j| tower::pre_tower_row(&lambda, t, j))
        .collect::<Result<_, _>>()
        .map_err(Outcome::usage)?;
    let sizes = tw.row_sizes();
    let out = match cli.format {
        Format::Json => {
            json!({
                "t": t.get(),
                "partition": lambda,
                "pre_tower": pre,
                "rows": tw.rows(),
                "row_sizes": sizes,
                "defect": tw.defect(),
            })
            .to_string()
                + "\n"
        }
        Format::Csv => {
            let mut s = String::from("row,position,pre_tower,core,core_size\n");
            for (j, (pre_row, row)) in pre.iter().zip(tw.rows()).enumerate() {
                for (i, (alpha, beta)) in pre_row.iter().zip(row).enumerate() {
                    let _ = writeln!(
                        s,
                        "{j},{i},\"{}\",\"{}\",{}",
                        comma_list(alpha),
                        comma_list(beta),
                        beta.size()
                    );
                }
            }
            s
        }
        Format::Plain => {
            let mut s = format!("{t}-core pre-tower of {lambda}\n");
            for (j, row) in pre.iter().enumerate() {
                let _ = writeln!(s, "  row {j}: {}", spaced(row));
            }
            let _ = writeln!(s, "{t}-core tower of {lambda}");
            for (j, row) in tw.rows().iter().enumerate() {
                let _ = writeln!(s, "  row {j}: {}    size {}", spaced(row), sizes[j]);
            }
            let _ = writeln!(s, "defect {}", tw.defect());
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn closed_series(kind: SeriesKind, j: usize, t: Modulus, order: usize) -> Result<IntSeries, Error> {
    match kind {
        SeriesKind::T => genfun::t_closed(j, t, order),
        SeriesKind::D => Ok(genfun::d_closed(t, order)),
        SeriesKind::Cores => genfun::gen_core_closed(j, t, order),
    }
}

fn brute_series(kind: SeriesKind, j: usize, t: Modulus, order: usize) -> IntSeries {
    match kind {
        SeriesKind::T => genfun::t_brute(j, t, order),
        SeriesKind::D => genfun::d_brute(t, order),
        SeriesKind::Cores => genfun::gen_core_brute(j, t, order),
    }
}

fn kind_name(kind: SeriesKind) -> &'static str {
    match kind {
        SeriesKind::T => "T",
        SeriesKind::D => "D",
        SeriesKind::Cores => "cores",
    }
}

fn coefficient_line(s: &IntSeries) -> String {
    s.coeffs()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn series_cmd(cli: &Cli, a: &SeriesArgs) -> Result<Outcome, Outcome> {
    let t = modulus(a.t)?;
    if a.mode != Mode::Closed && a.order > cli.brute_ceiling {
        return Err(Outcome::usage(format!(
            "order {} exceeds the brute-force ceiling {}",
            a.order, cli.brute_ceiling
        )));
    }
    let j = (a.kind != SeriesKind::D).then_some(a.j);
    let closed = || closed_series(a.kind, a.j, t, a.order).map_err(Outcome::usage);
    let (series, report) = match a.mode {
        Mode::Closed => (closed()?, None),
        Mode::Brute => (brute_series(a.kind, a.j, t, a.order), None),
        Mode::Both => {
            let c = closed()?;
            let b = brute_series(a.kind, a.j, t, a.order);
            let r = VerificationReport::compare(
                kind_name(a.kind),
                t,
                j,
                a.order,
                c.coeffs(),
                b.coeffs(),
            );
            (c, Some((b, r)))
        }
    };
    let out = match (cli.format, &report) {
        (Format::Json, None) => serde_json::to_string(&series).expect("serializable") + "\n",
        (Format::Json, Some((brute, r))) => {
            json!({ "closed": series, "brute": brute, "report": r }).to_string() + "\n"
        }
        (Format::Csv, None) => series.to_csv(),
        (Format::Csv, Some((brute, _))) => {
            let mut s = String::from("n,closed,brute\n");
            for (n, (c, b)) in series.coeffs().iter().zip(brute.coeffs()).enumerate() {
                let _ = writeln!(s, "{n},{c},{b}");
            }
            s
        }
        (Format::Plain, None) => coefficient_line(&series) + "\n",
        (Format::Plain, Some((_, r))) => {
            format!("{}\n{}\n", plain_report(r), coefficient_line(&series))
        }
    };
    let code = match &report {
        Some((_, r)) if !r.passed() => EXIT_MISMATCH,
        _ => EXIT_PASS,
    };
    Ok(Outcome {
        code,
        stdout: out,
        stderr: String::new(),
    })
}

fn plain_report(r: &VerificationReport) -> String {
    let mut s = format!("{} t={}", r.identity_name, r.t);
    if let Some(j) = r.j {
        let _ = write!(s, " j={j}");
    }
    let _ = write!(s, " order={}: ", r.order_checked);
    match &r.first_mismatch {
        None => s.push_str("pass"),
        Some(m) => {
            let _ = write!(
                s,
                "fail at n={} ({} vs {})",
                m.n, m.closed_value, m.brute_value
            );
        }
    }
    s
}

fn render_report(format: Format, r: &VerificationReport) -> String {
    match format {
        Format::Json => serde_json::to_string(r).expect("serializable") + "\n",
        Format::Csv => {
            let (n, c, b) = match &r.first_mismatch {
                Some(m) => (
                    m.n.to_string(),
                    m.closed_value.to_string(),
                    m.brute_value.to_string(),
                ),
                None => Default::default(),
            };
            format!(
                "identity,t,order,status,n,closed,brute\n\"{}\",{},{},{},{n},{c},{b}\n",
                r.identity_name,
                r.t,
                r.order_checked,
                if r.passed() { "pass" } else { "fail" }
            )
        }
        Format::Plain => plain_report(r) + "\n",
    }
}

fn verify_cmd(cli: &Cli, a: &VerifyArgs) -> Result<Outcome, Outcome> {
    let t = modulus(a.t)?;
    let report = match a.check {
        Check::Congruence => genfun::check_congruence(t, a.order),
        Check::Recursion => genfun::check_recursion(t, a.order),
        Check::Monotone => genfun::monotonicity_check(t, a.order),
    };
    let code = if report.passed() {
        EXIT_PASS
    } else {
        EXIT_MISMATCH
    };
    Ok(Outcome {
        code,
        stdout: render_report(cli.format, &report),
        stderr: String::new(),
    })
}

fn check_eps(eps: f64) -> Result<(), Outcome> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Outcome::usage(format!("eps must lie in (0, 1], got {eps}")))
    }
}

fn asympt_cmd(cli: &Cli, a: &AsymptCommand) -> Result<Outcome, Outcome> {
    let digits = cli.precision;
    let out = match a {
        AsymptCommand::Defect { t, samples } => {
            let t = modulus(*t)?;
            let rows = asymptotics::defect_samples(t, samples, digits);
            match cli.format {
                Format::Json => serde_json::to_string(&rows).expect("serializable") + "\n",
                Format::Csv | Format::Plain => asymptotics::samples_to_csv(&rows),
            }
        }
        AsymptCommand::Transform { m, eps } => {
            check_eps(*eps)?;
            if *m == 0 {
                return Err(Outcome::usage("m must be positive"));
            }
            let residual = asymptotics::g2_transform_check(*m, *eps, digits);
            match cli.format {
                Format::Json => {
                    json!({ "m": m, "eps": eps, "digits": digits, "residual": residual })
                        .to_string()
                        + "\n"
                }
                Format::Csv => format!("m,eps,digits,residual\n{m},{eps},{digits},{residual:e}\n"),
                Format::Plain => format!("{residual:e}\n"),
            }
        }
        AsymptCommand::Eta { eps } => {
            check_eps(*eps)?;
            let ratio = asymptotics::eta_asymptotic_check(*eps, digits);
            match cli.format {
                Format::Json => {
                    json!({ "eps": eps, "digits": digits, "ratio": ratio }).to_string() + "\n"
                }
                Format::Csv => format!("eps,digits,ratio\n{eps},{digits},{ratio}\n"),
                Format::Plain => format!("{ratio}\n"),
            }
        }
    };
    Ok(Outcome::ok(out))
}

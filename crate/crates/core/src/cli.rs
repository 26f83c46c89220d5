//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage error,
//! 3 precision error (digit prefix or sequence too short).

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::format::{parse_natural, parse_rational, rational_to_decimal, rational_to_string, write_atomic};
use crate::hilbert::{
    alpha_table, cumulative_rows, epsilon_at, lower_envelope_on, plateau_decomposition, upper_envelope_on,
    write_plateaus_csv, AlphaEvaluator, EnvelopeOutcome,
};
use crate::oracle::{compare_range, RangeComparison};
use crate::quasifit::{difference_reduce, refute, verify_certificate, ModelCandidate, RefutationCertificate, RefutationOutcome};
use crate::semigroup::{conductor, eventual_linear, members, verify_dimension_model, DimensionModel};
use crate::theta::{
    build_value_sequence, check_sequence_invariants, theta_from_multiplicity, value_sequence_closed_form, ThetaSpec,
    ValueSequence,
};
use crate::Error;

/// Directory used for outputs when `--output` is absent.
pub const OUT_DIR_ENV: &str = "VALHILBERT_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "valhilbert", version, about = "Exact Hilbert functions of valuation ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ThetaArgs {
    /// theta as `p/q`, `p`, or `inf`
    #[arg(long)]
    pub theta: Option<String>,
    /// explicit digit prefix `e2:b3b4b5...`
    #[arg(long)]
    pub bits: Option<String>,
    /// target multiplicity C in [0, 1/2]; theta = 1/C - 2
    #[arg(long)]
    pub multiplicity: Option<String>,
}

impl ThetaArgs {
    fn given(&self) -> usize {
        [&self.theta, &self.bits, &self.multiplicity]
            .iter()
            .filter(|x| x.is_some())
            .count()
    }

    pub fn resolve(&self) -> Result<ThetaSpec, CliError> {
        if self.given() != 1 {
            return Err(CliError::Usage(
                "give exactly one of --theta, --bits, --multiplicity".into(),
            ));
        }
        let parsed = if let Some(t) = &self.theta {
            if t.contains(':') {
                return Err(CliError::Usage("use --bits for digit prefixes".into()));
            }
            t.parse()
        } else if let Some(b) = &self.bits {
            if !b.contains(':') {
                return Err(CliError::Usage("--bits expects `e2:b3b4...`".into()));
            }
            b.parse()
        } else {
            let c = self.multiplicity.as_deref().expect("counted");
            parse_rational(c).and_then(|c| theta_from_multiplicity(&c))
        };
        parsed.map_err(CliError::from)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// output file; defaults to $VALHILBERT_OUT_DIR/<command>.<ext>, else stdout
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build r_0..r_I
    Construct {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, default_value_t = 10)]
        upto: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tabulate alpha(n) and l(R/I_n), or answer point queries
    Alpha {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, default_value_t = 100)]
        n_max: u64,
        /// point query, any size (repeatable); replaces the table
        #[arg(long)]
        at: Vec<String>,
        /// emit the two-column series n, alpha(n)/n
        #[arg(long)]
        series: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Normalized lengths 2 l(R/I_n) / n^2
    Cumulative {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
        /// sample spacing (default n_max / 100)
        #[arg(long)]
        step: Option<u64>,
        /// emit the two-column series n, 2 l(R/I_n) / n^2
        #[arg(long)]
        series: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Plateaus (r_0+...+r_i, r_{i+1}) with value 2^i
    Plateaus {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, default_value_t = 10)]
        upto: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// alpha(r_i - 1)/r_i against 1/(2 + theta)
    Limits {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, default_value_t = 20)]
        upto: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Lower and upper envelope checks
    Envelopes {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, default_value_t = 10_000)]
        n_max: u64,
        /// epsilon for the upper envelope (repeatable)
        #[arg(long, default_values_t = ["1/10".to_string(), "1/100".to_string()])]
        eps: Vec<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Certificate against a quasi-polynomial-plus-bounded model
    Refute {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        period: u64,
        /// deviation bound M, `p/q`
        #[arg(long)]
        bound: String,
        /// the model is for l(R/I_n) rather than alpha
        #[arg(long)]
        cumulative: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Conductor, and optionally checks on a dimension model
    Semigroup {
        /// generators, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        #[arg(long, default_value_t = 30)]
        bound: u64,
        /// CSV `n,dim`
        #[arg(long)]
        dims: Option<PathBuf>,
        /// residue degree, or `inf`
        #[arg(long)]
        residue_degree: Option<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the invariant suite, or re-check a certificate file
    Verify {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, default_value_t = 2000)]
        n_max: u64,
        #[arg(long, default_value_t = 64)]
        upto: usize,
        /// certificate JSON to re-check instead
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Construct { .. } => "construct",
            Command::Alpha { .. } => "alpha",
            Command::Cumulative { .. } => "cumulative",
            Command::Plateaus { .. } => "plateaus",
            Command::Limits { .. } => "limits",
            Command::Envelopes { .. } => "envelopes",
            Command::Refute { .. } => "refute",
            Command::Semigroup { .. } => "semigroup",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Precision(String),
    Verification(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Precision(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Precision(m) => write!(f, "precision error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InsufficientPrecision { .. } | Error::SequenceTooShort { .. } => CliError::Precision(e.to_string()),
            Error::MalformedCertificate(_) | Error::NotStabilized { .. } => CliError::Verification(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Where a command's artifact goes.
struct Sink<'a> {
    command: &'static str,
    ext: &'static str,
    path: Option<PathBuf>,
    stdout: &'a mut dyn Write,
}

impl Sink<'_> {
    fn emit(&mut self, contents: &str) -> Result<(), CliError> {
        let target = self.path.clone().or_else(|| {
            std::env::var_os(OUT_DIR_ENV).map(|dir| PathBuf::from(dir).join(format!("{}.{}", self.command, self.ext)))
        });
        match target {
            Some(p) => write_atomic(&p, contents.as_bytes())?,
            None => self.stdout.write_all(contents.as_bytes())?,
        }
        Ok(())
    }
}

/// Parses `args` (program name first) and runs the command; returns the
/// exit code. Artifacts go to files or `stdout`, diagnostics to stderr.
pub fn run_args<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(stdout, "{e}");
            } else {
                eprintln!("{e}");
            }
            return code;
        }
    };
    match run(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("valhilbert: {e}");
            e.exit_code()
        }
    }
}

fn sequence_for(theta: &ThetaSpec, upto: usize) -> Result<ValueSequence, CliError> {
    Ok(build_value_sequence(theta, upto)?)
}

fn covering(theta: &ThetaSpec, n: u64) -> Result<ValueSequence, CliError> {
    Ok(ValueSequence::covering(theta, &BigUint::from(n))?)
}

fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let name = cli.command.name();
    match &cli.command {
        Command::Construct { theta, upto, out } => {
            let theta = theta.resolve()?;
            let vs = sequence_for(&theta, *upto)?;
            let body = match out.format {
                Format::Json => format!("{}\n", vs.to_json()),
                Format::Csv => {
                    let mut s = String::from("i,r\n");
                    for (i, r) in vs.values().iter().enumerate() {
                        writeln!(s, "{i},{r}").unwrap();
                    }
                    s
                }
            };
            sink(name, out, stdout).emit(&body)
        }
        Command::Alpha {
            theta,
            n_max,
            at,
            series,
            out,
        } => {
            let theta = theta.resolve()?;
            if !at.is_empty() {
                let ns = at
                    .iter()
                    .map(|s| parse_natural(s))
                    .collect::<Result<Vec<_>, _>>()?;
                let top = ns.iter().max().expect("non-empty");
                let vs = ValueSequence::covering(&theta, top)?;
                let eval = AlphaEvaluator::new(&vs);
                let rows = ns
                    .iter()
                    .map(|n| Ok((n.clone(), eval.alpha(n)?)))
                    .collect::<Result<Vec<_>, Error>>()?;
                let body = match out.format {
                    Format::Csv => {
                        let mut s = String::from("n,alpha\n");
                        for (n, a) in &rows {
                            writeln!(s, "{n},{a}").unwrap();
                        }
                        s
                    }
                    Format::Json => to_json_string(&json!({
                        "theta": theta,
                        "rows": rows.iter().map(|(n, a)| json!({"n": n.to_string(), "alpha": a.to_string()})).collect::<Vec<_>>(),
                    })),
                };
                return sink(name, out, stdout).emit(&body);
            }
            let vs = covering(&theta, *n_max)?;
            let table = alpha_table(&vs, *n_max)?;
            let body = match (out.format, series) {
                (Format::Csv, true) => {
                    let mut s = String::from("n,alpha_over_n\n");
                    for n in 1..=*n_max {
                        let q = BigRational::new(table.alpha(n).unwrap().into(), n.into());
                        writeln!(s, "{n},{}", rational_to_decimal(&q, 12)).unwrap();
                    }
                    s
                }
                (Format::Csv, false) => {
                    let mut buf = Vec::new();
                    table.write_csv(&mut buf)?;
                    String::from_utf8(buf).expect("ascii")
                }
                (Format::Json, _) => to_json_string(&json!({
                    "theta": theta,
                    "alpha": table.alpha_values().iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                    "cumulative": table.cumulative_values().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                })),
            };
            sink(name, out, stdout).emit(&body)
        }
        Command::Cumulative {
            theta,
            n_max,
            step,
            series,
            out,
        } => {
            let theta = theta.resolve()?;
            if *n_max == 0 {
                return Err(CliError::Usage("--n-max must be positive".into()));
            }
            let step = step.unwrap_or((n_max / 100).max(1)).max(1);
            let mut samples: Vec<u64> = (1..=n_max / step).map(|k| k * step).collect();
            if samples.last() != Some(n_max) {
                samples.push(*n_max);
            }
            let vs = covering(&theta, *n_max)?;
            let table = alpha_table(&vs, *n_max)?;
            let rows = cumulative_rows(&table, &samples)?;
            let body = match (out.format, series) {
                (Format::Csv, true) => {
                    let mut s = String::from("n,two_l_over_n2\n");
                    for r in &rows {
                        writeln!(s, "{},{}", r.n, rational_to_decimal(&r.normalized, 12)).unwrap();
                    }
                    s
                }
                (Format::Csv, false) => {
                    let mut s = String::from("n,cumulative,normalized,distance\n");
                    for r in &rows {
                        let d = r.distance.as_ref().map(rational_to_string).unwrap_or_default();
                        writeln!(s, "{},{},{},{}", r.n, r.cumulative, rational_to_string(&r.normalized), d).unwrap();
                    }
                    s
                }
                (Format::Json, _) => to_json_string(&json!({
                    "theta": theta,
                    "rows": rows.iter().map(|r| json!({
                        "n": r.n.to_string(),
                        "cumulative": r.cumulative.to_string(),
                        "normalized": rational_to_string(&r.normalized),
                        "distance": r.distance.as_ref().map(rational_to_string),
                    })).collect::<Vec<_>>(),
                })),
            };
            sink(name, out, stdout).emit(&body)
        }
        Command::Plateaus { theta, upto, out } => {
            let theta = theta.resolve()?;
            let vs = sequence_for(&theta, *upto)?;
            let plateaus = plateau_decomposition(&vs);
            let body = match out.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_plateaus_csv(&plateaus, &mut buf)?;
                    String::from_utf8(buf).expect("ascii")
                }
                Format::Json => to_json_string(&json!({ "theta": theta, "plateaus": plateaus })),
            };
            sink(name, out, stdout).emit(&body)
        }
        Command::Limits { theta, upto, out } => {
            let theta = theta.resolve()?;
            let vs = sequence_for(&theta, *upto)?;
            let indices: Vec<usize> = (2..=*upto).collect();
            let rows = crate::hilbert::limit_report(&vs, &indices)?;
            let eps: Vec<Option<BigRational>> = indices.iter().map(|&i| epsilon_at(&theta, i).ok().map(|e| e.value)).collect();
            let body = match out.format {
                Format::Csv => {
                    let mut s = String::from("i,r,alpha_head,ratio,epsilon,distance\n");
                    for (r, e) in rows.iter().zip(&eps) {
                        writeln!(
                            s,
                            "{},{},{},{},{},{}",
                            r.index,
                            r.r,
                            r.head,
                            rational_to_string(&r.ratio),
                            e.as_ref().map(rational_to_string).unwrap_or_default(),
                            r.distance.as_ref().map(rational_to_string).unwrap_or_default()
                        )
                        .unwrap();
                    }
                    s
                }
                Format::Json => to_json_string(&json!({
                    "theta": theta,
                    "rows": rows.iter().zip(&eps).map(|(r, e)| json!({
                        "i": r.index,
                        "r": r.r.to_string(),
                        "alpha_head": r.head.to_string(),
                        "ratio": rational_to_string(&r.ratio),
                        "epsilon": e.as_ref().map(rational_to_string),
                        "distance": r.distance.as_ref().map(rational_to_string),
                    })).collect::<Vec<_>>(),
                })),
            };
            sink(name, out, stdout).emit(&body)
        }
        Command::Envelopes { theta, n_max, eps, out } => {
            let theta = theta.resolve()?;
            let vs = covering(&theta, *n_max)?;
            let table = alpha_table(&vs, *n_max)?;
            let mut checks = vec![Check::from_envelope("lower", &lower_envelope_on(&table)?)];
            for e in eps {
                let e = parse_rational(e)?;
                let report = upper_envelope_on(&table, &e)?;
                let mut check = Check::from_envelope(&format!("upper eps={}", rational_to_string(&e)), &report.outcome);
                write!(check.detail, "; N={} head={}", report.threshold_index, report.head).unwrap();
                checks.push(check);
            }
            finish_checks(name, &checks, out, stdout)
        }
        Command::Refute {
            theta,
            degree,
            period,
            bound,
            cumulative,
            output,
        } => {
            let theta = theta.resolve()?;
            let stated = ModelCandidate::new(*degree, *period, parse_rational(bound)?)?;
            let candidate = if *cumulative { difference_reduce(&stated) } else { stated };
            let vs = sequence_for(&theta, 8.min(theta.exact_upto().unwrap_or(8)).max(2))?;
            let outcome = refute(&vs, &candidate)?;
            let out = OutputArgs {
                format: Format::Json,
                output: output.clone(),
            };
            match outcome {
                RefutationOutcome::Refuted(cert) => {
                    if !verify_certificate(&cert)? {
                        return Err(CliError::Verification("emitted certificate failed re-verification".into()));
                    }
                    sink(name, &out, stdout).emit(&format!("{}\n", cert.to_json()))
                }
                RefutationOutcome::Inconclusive { levels_tried } => sink(name, &out, stdout).emit(&to_json_string(&json!({
                    "outcome": "inconclusive",
                    "levels_tried": levels_tried,
                }))),
            }
        }
        Command::Semigroup {
            gens,
            bound,
            dims,
            residue_degree,
            output,
        } => {
            let out = OutputArgs {
                format: Format::Json,
                output: output.clone(),
            };
            let witness = conductor(gens).map_err(|e| CliError::Verification(e.to_string()))?;
            let sg = members(gens, *bound);
            let mut report = json!({
                "generators": sg.generators(),
                "members": sg.members(),
                "conductor": witness.conductor,
                "u": witness.u,
                "t": witness.t,
                "square_bound": witness.square_bound,
            });
            let mut failed = None;
            if let Some(path) = dims {
                let r = match residue_degree.as_deref() {
                    None | Some("inf") => None,
                    Some(v) => Some(v.parse().map_err(|_| CliError::Usage(format!("bad residue degree {v:?}")))?),
                };
                let file = std::fs::File::open(path)?;
                let model = DimensionModel::read_csv(std::io::BufReader::new(file), r)?;
                let window = members(gens, model.dims.len() as u64);
                let violations = verify_dimension_model(&model, &window);
                report["violations"] = serde_json::to_value(&violations).expect("serializable");
                if !violations.is_empty() {
                    failed = Some(format!("{} dimension model violations", violations.len()));
                }
                if r.is_some() {
                    match eventual_linear(&model) {
                        Ok(tail) => report["linear_tail"] = serde_json::to_value(&tail).expect("serializable"),
                        Err(e) => failed = failed.or(Some(e.to_string())),
                    }
                }
            }
            sink(name, &out, stdout).emit(&to_json_string(&report))?;
            match failed {
                Some(m) => Err(CliError::Verification(m)),
                None => Ok(()),
            }
        }
        Command::Verify {
            theta,
            n_max,
            upto,
            certificate,
            out,
        } => {
            if let Some(path) = certificate {
                if theta.given() > 0 {
                    return Err(CliError::Usage("--certificate carries its own theta".into()));
                }
                let text = std::fs::read_to_string(path)?;
                let cert = RefutationCertificate::from_json(&text)?;
                let ok = verify_certificate(&cert)?;
                let checks = vec![Check {
                    name: "certificate".into(),
                    passed: ok,
                    detail: format!(
                        "d={} s={} M={} class={} points={}",
                        cert.candidate.degree,
                        cert.candidate.period,
                        rational_to_string(&cert.candidate.bound),
                        cert.residue_class,
                        cert.points.len()
                    ),
                }];
                return finish_checks(name, &checks, out, stdout);
            }
            let theta = theta.resolve()?;
            let checks = verify_suite(&theta, *n_max, *upto)?;
            finish_checks(name, &checks, out, stdout)
        }
    }
}

fn sink<'a>(command: &'static str, out: &OutputArgs, stdout: &'a mut dyn Write) -> Sink<'a> {
    Sink {
        command,
        ext: out.format.ext(),
        path: out.output.clone(),
        stdout,
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_envelope(name: &str, outcome: &EnvelopeOutcome) -> Self {
        match outcome {
            EnvelopeOutcome::Pass { checked } => Check::new(name, true, format!("{checked} values")),
            EnvelopeOutcome::Violation { n, alpha } => Check::new(name, false, format!("fails at n={n} (alpha={alpha})")),
        }
    }
}

fn finish_checks(command: &'static str, checks: &[Check], out: &OutputArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let body = match out.format {
        Format::Csv => {
            let mut s = String::from("check,passed,detail\n");
            for c in checks {
                writeln!(s, "{},{},\"{}\"", c.name, c.passed, c.detail.replace('"', "'")).unwrap();
            }
            s
        }
        Format::Json => to_json_string(&serde_json::to_value(checks).expect("serializable")),
    };
    sink(command, out, stdout).emit(&body)?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join(", ")))
    }
}

/// The invariant suite behind `verify`.
pub fn verify_suite(theta: &ThetaSpec, n_max: u64, upto: usize) -> Result<Vec<Check>, CliError> {
    let upto = match theta.exact_upto() {
        Some(avail) => upto.min(avail),
        None => upto,
    }
    .max(2);
    let mut checks = Vec::new();

    let vs = sequence_for(theta, upto)?;
    let report = check_sequence_invariants(&vs);
    for f in &report.families {
        let detail = match f.first_failure() {
            Some(i) => format!("first failure at i={i}"),
            None => format!("{} indices", f.checked),
        };
        checks.push(Check::new(&format!("sequence: {}", f.family), f.passed(), detail));
    }
    let closed_bad = (0..=upto).find(|&i| value_sequence_closed_form(theta, i).ok().as_ref() != vs.get(i));
    checks.push(Check::new(
        "sequence: closed form",
        closed_bad.is_none(),
        closed_bad.map_or(format!("{} indices", upto + 1), |i| format!("differs at i={i}")),
    ));

    let eval = AlphaEvaluator::new(&vs);
    let head_bad = (1..=upto).find(|&i| eval.head(i) != Some(&(BigUint::one() << (i - 1))));
    checks.push(Check::new(
        "block heads alpha(r_i-1)=2^(i-1)",
        head_bad.is_none(),
        head_bad.map_or(format!("i=1..{upto}"), |i| format!("fails at i={i}")),
    ));

    let dense = covering(theta, n_max)?;
    let table = alpha_table(&dense, n_max)?;
    checks.push(match compare_range(&dense, n_max)? {
        RangeComparison::Pass { checked } => Check::new("oracle equivalence", true, format!("{checked} values")),
        RangeComparison::Mismatch { n, fast, brute } => {
            Check::new("oracle equivalence", false, format!("n={n}: recursion {fast}, brute force {brute}"))
        }
    });

    let alpha = table.alpha_values();
    let step_bad = (1..alpha.len()).find(|&n| alpha[n] < alpha[n - 1] || alpha[n] - alpha[n - 1] > 1);
    checks.push(Check::new(
        "alpha steps in {0,1}",
        step_bad.is_none(),
        step_bad.map_or(format!("n<={n_max}"), |n| format!("fails at n={n}")),
    ));
    let cum = table.cumulative_values();
    let cum_bad = (1..cum.len()).find(|&n| cum[n] - cum[n - 1] != u128::from(alpha[n - 1]));
    checks.push(Check::new(
        "cumulative differences",
        cum_bad.is_none(),
        cum_bad.map_or(format!("n<={n_max}"), |n| format!("fails at n={n}")),
    ));

    let mut plateau_levels = 0;
    let mut plateau_bad = None;
    for p in plateau_decomposition(&dense) {
        let Some(hi) = num_traits::ToPrimitive::to_u64(&p.hi) else { break };
        if hi > n_max {
            break;
        }
        plateau_levels += 1;
        let lo = num_traits::ToPrimitive::to_u64(&p.lo).expect("lo <= hi + 1");
        let value = num_traits::ToPrimitive::to_u64(&p.value).expect("value <= alpha");
        if let Some(s) = (lo..=hi).find(|&s| table.alpha(s) != Some(value)) {
            plateau_bad = Some((p.level, s));
            break;
        }
    }
    checks.push(Check::new(
        "plateau law",
        plateau_bad.is_none(),
        plateau_bad.map_or(format!("{plateau_levels} levels"), |(i, s)| format!("level {i} fails at s={s}")),
    ));

    checks.push(Check::from_envelope("lower envelope", &lower_envelope_on(&table)?));

    if theta.exact_value().is_some() || theta.is_infinite() {
        for eps in [BigRational::new(1.into(), 10.into()), BigRational::new(1.into(), 100.into())] {
            let name = format!("upper envelope eps={}", rational_to_string(&eps));
            let r = upper_envelope_on(&table, &eps)?;
            checks.push(Check::from_envelope(&name, &r.outcome));
        }
        let limit = match theta {
            ThetaSpec::Rational(q) => (BigRational::from_integer(2.into()) + q).recip(),
            _ => BigRational::from_integer(0.into()),
        };
        let top = upto.min(30);
        let eps_bad = (2..=top).find(|&i| {
            let ratio = BigRational::new(eval.head(i).unwrap().clone().into(), vs.get(i).unwrap().clone().into());
            epsilon_at(theta, i).map(|e| e.value) != Ok(ratio - &limit)
        });
        checks.push(Check::new(
            "epsilon identity",
            eps_bad.is_none(),
            eps_bad.map_or(format!("i=2..{top}"), |i| format!("fails at i={i}")),
        ));
    }
    Ok(checks)
}

//! `genseq`: exact terms, tables, identity checks, grid sweeps, expression
//! evaluation and a small benchmark for the generalized sequence
//! `U(n+2) = r·U(n+1) + U(n)`, `U(0) = b − r·a`, `U(1) = a`.
//!
//! Exit codes: 0 success / all pass, 1 identity violation, 2 usage or config
//! error, 3 expression error.

mod output;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use genseq_core::expr::{check_equal, eval_source, Binding, Env};
use genseq_core::identities::sweep::{parse_m_values, parse_values};
use genseq_core::identities::{sweep, SweepConfig};
use genseq_core::{
    evaluate, term, term_fast, term_range, Bindings, IdentityId, IdentityInstance, IdentityReport, Rational,
    SequenceFamily, SequenceParams,
};

use output::{Emitter, Format, Record};

#[derive(Parser)]
#[command(name = "genseq", version, about = "Exact generalized Fibonacci/Pell sequences and identity checks")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Suppress per-record output (summaries and exit codes remain)
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

/// Explicit `(a, b, r)` instead of a family name.
#[derive(Args, Default)]
struct SeqArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<Rational>,
}

#[derive(Subcommand)]
enum Command {
    /// Print one term U(n)
    Term {
        /// fibonacci, lucas, pell or pell-lucas (or give --a/--b/--r)
        family: Option<String>,
        #[arg(short = 'n', long = "index", allow_hyphen_values = true)]
        n: i64,
        #[command(flatten)]
        seq: SeqArgs,
    },
    /// Print U(lo) ..= U(hi): `table [FAMILY] LO HI`
    #[command(allow_negative_numbers = true)]
    Table {
        #[arg(num_args = 2..=3, value_names = ["FAMILY", "LO", "HI"], required = true)]
        args: Vec<String>,
        #[command(flatten)]
        seq: SeqArgs,
    },
    /// Check one identity instance
    Verify {
        /// Registry name, e.g. master, sury, marques, pell-c
        identity: String,
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<Rational>,
        #[arg(short = 'm', long = "m")]
        m: u32,
    },
    /// Check an identity over a parameter grid
    Sweep {
        identity: Option<String>,
        /// Flat `key = value` file with keys identity, a, b, r, c, m
        #[arg(long)]
        config: Option<PathBuf>,
        /// Range `lo..hi` or list `v1,v2,...`
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(short = 'm', long = "m", allow_hyphen_values = true)]
        m: Option<String>,
        /// Evaluate grid points on all cores (output order is unchanged)
        #[arg(long)]
        parallel: bool,
    },
    /// Evaluate an expression, or compare two with --equal
    Eval {
        #[arg(allow_hyphen_values = true)]
        expression: Option<String>,
        #[arg(long, num_args = 2, value_names = ["LHS", "RHS"], allow_hyphen_values = true)]
        equal: Option<Vec<String>>,
        /// name=value, repeatable
        #[arg(long = "bind")]
        bind: Vec<Binding>,
    },
    /// Time the iterative and logarithmic term algorithms
    Bench {
        /// Comma-separated indices
        #[arg(long = "n", value_delimiter = ',', default_values_t = [1u64, 1_000, 100_000])]
        n: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        reps: u32,
        /// Defaults to fibonacci
        #[arg(long)]
        family: Option<String>,
        #[command(flatten)]
        seq: SeqArgs,
    },
}

enum Failure {
    Usage(String),
    Expression(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<bool, Failure>;

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

fn sequence_params(family: Option<&str>, seq: &SeqArgs) -> Result<SequenceParams, Failure> {
    let explicit = [&seq.a, &seq.b, &seq.r];
    match family {
        Some(name) => {
            if explicit.iter().any(|v| v.is_some()) {
                return Err(usage("give either a family name or --a/--b/--r, not both"));
            }
            Ok(name.parse::<SequenceFamily>().map_err(usage)?.resolve())
        }
        None => match (&seq.a, &seq.b, &seq.r) {
            (Some(a), Some(b), Some(r)) => Ok(SequenceParams { a: a.clone(), b: b.clone(), r: r.clone() }),
            _ => Err(usage("need a family name or all of --a, --b, --r")),
        },
    }
}

fn report_record(report: &IdentityReport) -> Record {
    let inst = &report.instance;
    let p = inst.params();
    vec![
        ("identity", inst.id().name().into()),
        ("a", p.a.to_string().into()),
        ("b", p.b.to_string().into()),
        ("r", p.r.to_string().into()),
        ("c", inst.c().to_string().into()),
        ("m", inst.m().into()),
        ("lhs", report.lhs.to_string().into()),
        ("rhs", report.rhs.to_string().into()),
        ("residual", report.residual.to_string().into()),
        ("pass", report.pass.into()),
    ]
}

fn report_plain(report: &IdentityReport) -> String {
    let inst = &report.instance;
    let p = inst.params();
    format!(
        "{} {} a={} b={} r={} c={} m={} lhs={} rhs={} residual={}",
        if report.pass { "PASS" } else { "FAIL" },
        inst.id(),
        p.a,
        p.b,
        p.r,
        inst.c(),
        inst.m(),
        report.lhs,
        report.rhs,
        report.residual
    )
}

fn run(cli: Cli) -> Outcome {
    let stdout = io::stdout();
    let mut out = Emitter::new(cli.format, stdout.lock());
    let quiet = cli.quiet;
    let outcome = match cli.command {
        Command::Term { family, n, seq } => {
            let params = sequence_params(family.as_deref(), &seq)?;
            let value = term_fast(&params, n);
            if !quiet {
                out.emit(&vec![("n", n.into()), ("value", value.to_string().into())], || value.to_string())?;
            }
            Ok(true)
        }
        Command::Table { args, seq } => {
            let (family, bounds) = match args.len() {
                3 => (Some(args[0].as_str()), &args[1..]),
                _ => (None, &args[..]),
            };
            let parse = |s: &String| s.parse::<i64>().map_err(|_| usage(format!("invalid index `{s}`")));
            let (lo, hi) = (parse(&bounds[0])?, parse(&bounds[1])?);
            let params = sequence_params(family, &seq)?;
            let values = term_range(&params, lo, hi).map_err(usage)?;
            if !quiet {
                for (n, v) in (lo..=hi).zip(&values) {
                    out.emit(&vec![("n", n.into()), ("value", v.to_string().into())], || format!("{n}\t{v}"))?;
                }
            }
            Ok(true)
        }
        Command::Verify { identity, seq, c, m } => {
            let id: IdentityId = identity.parse().map_err(usage)?;
            let bindings = Bindings { a: seq.a, b: seq.b, r: seq.r, c };
            let instance = IdentityInstance::new(id, &bindings, m).map_err(usage)?;
            let report = evaluate(instance);
            if !quiet {
                out.emit(&report_record(&report), || report_plain(&report))?;
            }
            Ok(report.pass)
        }
        Command::Sweep { identity, config, a, b, r, c, m, parallel } => {
            let mut cfg = match (&config, &identity) {
                (Some(path), _) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                    text.parse::<SweepConfig>().map_err(usage)?
                }
                (None, Some(name)) => SweepConfig::new(name.parse().map_err(usage)?),
                (None, None) => return Err(usage("sweep needs an identity name or --config")),
            };
            if let Some(name) = &identity {
                cfg.identity = name.parse().map_err(usage)?;
            }
            let axis = |spec: &Option<String>, name: &str| -> Result<Option<Vec<Rational>>, Failure> {
                spec.as_deref().map(|s| parse_values(s).map_err(|e| usage(format!("--{name}: {e}")))).transpose()
            };
            if let Some(v) = axis(&a, "a")? {
                cfg.a = Some(v);
            }
            if let Some(v) = axis(&b, "b")? {
                cfg.b = Some(v);
            }
            if let Some(v) = axis(&r, "r")? {
                cfg.r = Some(v);
            }
            if let Some(v) = axis(&c, "c")? {
                cfg.c = Some(v);
            }
            if let Some(spec) = &m {
                cfg.m = parse_m_values(spec).map_err(|e| usage(format!("--m: {e}")))?;
            }
            let mut stream = sweep(&cfg).map_err(usage)?.parallel(parallel);
            for report in stream.by_ref() {
                if !quiet {
                    out.emit(&report_record(&report), || report_plain(&report))?;
                }
            }
            let s = stream.summary();
            let record = vec![("total", s.total.into()), ("passed", s.passed.into()), ("failed", s.failed.into())];
            out.emit(&record, || format!("total={} passed={} failed={}", s.total, s.passed, s.failed))?;
            Ok(s.failed == 0)
        }
        Command::Eval { expression, equal, bind } => {
            let env = Env::new(bind).map_err(usage)?;
            match (expression, equal) {
                (Some(_), Some(_)) => Err(usage("give either an expression or --equal LHS RHS")),
                (None, None) => Err(usage("nothing to evaluate")),
                (Some(src), None) => {
                    let value = eval_source(&src, &env).map_err(|e| Failure::Expression(e.to_string()))?;
                    if !quiet {
                        out.emit(&vec![("expression", src.into()), ("value", value.to_string().into())], || {
                            value.to_string()
                        })?;
                    }
                    Ok(true)
                }
                (None, Some(pair)) => {
                    let (lhs_src, rhs_src) = (&pair[0], &pair[1]);
                    let cmp = check_equal(lhs_src, rhs_src, &env).map_err(|e| Failure::Expression(e.to_string()))?;
                    if !quiet {
                        let record = vec![
                            ("lhs_expression", lhs_src.as_str().into()),
                            ("rhs_expression", rhs_src.as_str().into()),
                            ("lhs", cmp.lhs.to_string().into()),
                            ("rhs", cmp.rhs.to_string().into()),
                            ("residual", cmp.residual.to_string().into()),
                            ("pass", cmp.pass.into()),
                        ];
                        out.emit(&record, || {
                            format!(
                                "{} lhs={} rhs={} residual={}",
                                if cmp.pass { "PASS" } else { "FAIL" },
                                cmp.lhs,
                                cmp.rhs,
                                cmp.residual
                            )
                        })?;
                    }
                    Ok(cmp.pass)
                }
            }
        }
        Command::Bench { n, reps, family, seq } => {
            if reps == 0 {
                return Err(usage("--reps must be at least 1"));
            }
            if n.is_empty() || n.contains(&0) {
                return Err(usage("--n takes positive integers"));
            }
            let family = if family.is_none() && seq.a.is_none() && seq.b.is_none() && seq.r.is_none() {
                Some("fibonacci")
            } else {
                family.as_deref()
            };
            let params = sequence_params(family, &seq)?;
            let mut all_agree = true;
            for &index in &n {
                let index = i64::try_from(index).map_err(|_| usage(format!("index {index} is too large")))?;
                let (slow_value, slow_time) = best_of(reps, || term(&params, index));
                let (fast_value, fast_time) = best_of(reps, || term_fast(&params, index));
                let agree = slow_value == fast_value;
                all_agree &= agree;
                let digits = fast_value.numer().magnitude().to_string().len();
                let record = vec![
                    ("n", index.into()),
                    ("digits", digits.into()),
                    ("iterative_ns", slow_time.as_nanos().into()),
                    ("fast_ns", fast_time.as_nanos().into()),
                    ("agree", agree.into()),
                ];
                if !quiet {
                    out.emit(&record, || {
                        format!(
                            "n={index} digits={digits} iterative={slow_time:?} fast={fast_time:?} {}",
                            if agree { "agree" } else { "MISMATCH" }
                        )
                    })?;
                }
            }
            Ok(all_agree)
        }
    };
    out.flush()?;
    outcome
}

fn best_of(reps: u32, f: impl Fn() -> Rational) -> (Rational, Duration) {
    let mut best = Duration::MAX;
    let mut value = None;
    for _ in 0..reps {
        let start = Instant::now();
        let v = f();
        best = best.min(start.elapsed());
        value = Some(v);
    }
    (value.expect("reps >= 1"), best)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Expression(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            let _ = writeln!(io::stderr(), "error: {e}");
            ExitCode::from(2)
        }
    }
}

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use minnorm::hard::{generate_pd, verify_exponential};
use minnorm::io::{hard_record_value, parse_lp, stages_to_string, InstanceFile};
use minnorm::rational::{format_decimal, format_exact};
use minnorm::reductions::{solve_lp, stage_dump, LpOutcome, OracleMode};
use minnorm::wolfe::{solve_observed, TraceFormat};
use minnorm::InsertionRule;

/// Exact minimum-norm points of V-polytopes with Wolfe's method.
#[derive(Parser)]
#[command(name = "minnorm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run Wolfe's method on an instance file and report the optimum.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "minnorm")]
        rule: InsertionRule,
        /// Stream every trace event to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: TraceFormat,
        /// Decimal places in human-readable renderings.
        #[arg(long, default_value_t = 4)]
        precision: usize,
    },
    /// Write the exponential instance P_d (d odd) to a file.
    GenHard {
        d: i64,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Compare corral counts on P_1, P_3, ..., P_{d_max} with the prediction.
    VerifyExponential {
        d_max: i64,
        #[arg(long, default_value = "minnorm")]
        rule: InsertionRule,
    },
    /// Solve `max cᵀx s.t. A x ≤ b` through the reduction chain.
    SolveLp {
        lp: PathBuf,
        /// `chain` answers every membership query through the distance
        /// oracle, `direct` runs Wolfe's method on the raw points.
        #[arg(long, default_value = "chain")]
        mode: OracleMode,
    },
    /// Dump every stage instance of the reduction chain.
    Reduce {
        lp: PathBuf,
        /// Reduce the optimality system instead of the feasibility system.
        #[arg(long)]
        kkt: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

/// Failure classes with their exit codes.
enum Failure {
    Usage(anyhow::Error),
    Mismatch,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn solve(path: &Path, rule: InsertionRule, trace: Option<&Path>, format: TraceFormat, precision: usize) -> Result<()> {
    let file = InstanceFile::parse(&read(path)?).with_context(|| format!("{}", path.display()))?;
    let instance = file.to_instance()?;
    let mut sink = match trace {
        Some(p) => Some(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => None,
    };
    let mut write_error = None;
    let start = Instant::now();
    let solution = solve_observed(&instance, rule, |event| {
        if let Some(out) = sink.as_mut() {
            if let Err(e) = writeln!(out, "{}", event.render(&instance, format, precision)) {
                write_error.get_or_insert(e);
            }
        }
    })?;
    let elapsed = start.elapsed();
    if let Some(e) = write_error {
        return Err(e).context("cannot write trace");
    }
    if let Some(mut out) = sink {
        out.flush().context("cannot write trace")?;
    }
    println!("rule: {rule}");
    println!("corral_count: {}", solution.corrals_visited);
    println!("major_cycle_total: {}", solution.major_cycles);
    println!("minor_cycle_total: {}", solution.minor_cycles);
    println!("corral: {}", instance.format_set(&solution.corral));
    println!("x_star: {}", solution.x);
    println!("x_star_decimal: {}", solution.x.display_decimal(precision));
    println!("norm_squared: {}", format_exact(&solution.norm_squared));
    println!(
        "norm_squared_decimal: {}",
        format_decimal(&solution.norm_squared, precision)
    );
    println!("wall_time_ms: {:.3}", elapsed.as_secs_f64() * 1000.0);
    Ok(())
}

fn gen_hard(d: i64, out: &Path) -> Result<()> {
    let record = generate_pd(d)?;
    fs::write(out, InstanceFile::from_instance(&record.instance).to_canonical_string())
        .with_context(|| format!("cannot write {}", out.display()))?;
    let summary = hard_record_value(&record);
    println!("d: {}", record.d);
    println!("points: {}", record.instance.len());
    println!("M_d: {}", summary["max_l1"].as_str().unwrap_or_default());
    println!("m_d: {}", summary["optimum_linf"].as_str().unwrap_or_default());
    println!("x_star: {}", record.optimum);
    Ok(())
}

fn verify(d_max: i64, rule: InsertionRule) -> Result<bool, Failure> {
    if d_max < 1 || d_max % 2 == 0 {
        return Err(Failure::Usage(anyhow!(
            "d_max must be a positive odd integer, got {d_max}"
        )));
    }
    println!("{:>3} {:>9} {:>9} {:>5}", "d", "predicted", "observed", "match");
    let mut all_match = true;
    for d in (1..=d_max).step_by(2) {
        let report = verify_exponential(d, rule).map_err(anyhow::Error::from)?;
        let predicted = report
            .predicted_count
            .map_or_else(|| "n/a".to_string(), |c| c.to_string());
        let mark = match report.matches() {
            Some(true) => "✓",
            Some(false) => {
                all_match = false;
                "✗"
            }
            None => "n/a",
        };
        println!("{d:>3} {predicted:>9} {:>9} {mark:>5}", report.observed_count);
        for diff in &report.diffs {
            log::warn!(
                "d = {d}: corral {} predicted {:?}, observed {:?}",
                diff.position,
                diff.predicted,
                diff.observed
            );
        }
    }
    Ok(all_match)
}

fn lp(path: &Path, mode: OracleMode) -> Result<()> {
    let lp = parse_lp(&read(path)?).with_context(|| format!("{}", path.display()))?;
    match solve_lp(&lp, mode)? {
        LpOutcome::Optimal(x) => {
            let objective = lp.c.dot(&x);
            println!("OPTIMAL");
            println!("x: {x}");
            println!("objective: {}", format_exact(&objective));
        }
        LpOutcome::Infeasible => println!("INFEASIBLE"),
        LpOutcome::Infinite => println!("INFINITE"),
    }
    Ok(())
}

fn reduce(path: &Path, kkt: bool, out: Option<&Path>) -> Result<()> {
    let lp = parse_lp(&read(path)?).with_context(|| format!("{}", path.display()))?;
    let text = stages_to_string(&stage_dump(&lp, kkt)?);
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve {
            instance,
            rule,
            trace,
            format,
            precision,
        } => solve(&instance, rule, trace.as_deref(), format, precision)?,
        Command::GenHard { d, out } => {
            if d < 1 || d % 2 == 0 {
                return Err(Failure::Usage(anyhow!("d must be a positive odd integer, got {d}")));
            }
            gen_hard(d, &out)?
        }
        Command::VerifyExponential { d_max, rule } => {
            if !verify(d_max, rule)? {
                return Err(Failure::Mismatch);
            }
        }
        Command::SolveLp { lp: path, mode } => lp(&path, mode)?,
        Command::Reduce { lp, kkt, out } => reduce(&lp, kkt, out.as_deref())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch) => {
            eprintln!("error: observed corral counts differ from the prediction");
            ExitCode::from(2)
        }
    }
}

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use w2bound_core::padic::{newton_polygon, roots_in_pzp_upper, TruncatedSeries};
use w2bound_core::report::SCHEMA;
use w2bound_core::{Error, JobSpec, Session};

#[derive(Parser)]
#[command(name = "w2bound", version, about = "Bounds on quadratic points of genus 3 hyperelliptic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and print the JSON report.
    Run {
        #[command(flatten)]
        job: JobArgs,
        /// Also write the report to this file.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Run the oracle suite on a job.
    Verify {
        #[command(flatten)]
        job: JobArgs,
    },
    /// Newton polygon and zero bound for a truncated p-adic series (JSON).
    Newton { series: PathBuf },
}

#[derive(Args)]
struct JobArgs {
    /// Job file (.json or .toml). Flags below override its fields.
    job: Option<PathBuf>,
    /// Eight comma-separated coefficients, constant term first.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    curve: Option<Vec<i64>>,
    #[arg(long)]
    p: Option<u64>,
    /// b01,b02,b12
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "alpha")]
    beta: Option<Vec<i64>>,
    /// Six comma-separated residues: alpha1 then alpha2.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Option<Vec<i64>>,
}

fn triple(v: &[i64], what: &str) -> anyhow::Result<[i64; 3]> {
    v.try_into().ok().with_context(|| format!("--{what} needs 3 values per vector"))
}

impl JobArgs {
    fn load(&self) -> anyhow::Result<JobSpec> {
        let mut job = match &self.job {
            Some(path) => parse_job(path)?,
            None => {
                let (Some(curve), Some(p)) = (&self.curve, self.p) else {
                    bail!("without a job file, --curve and --p are required");
                };
                JobSpec { curve: curve.clone(), p, alpha: None, beta: None, known_points: vec![], flags: Default::default() }
            }
        };
        if let Some(c) = &self.curve {
            job.curve = c.clone();
        }
        if let Some(p) = self.p {
            job.p = p;
        }
        if let Some(b) = &self.beta {
            job.beta = Some(triple(b, "beta")?);
            job.alpha = None;
        }
        if let Some(a) = &self.alpha {
            if a.len() != 6 {
                bail!("--alpha needs 6 values");
            }
            job.alpha = Some([triple(&a[..3], "alpha")?, triple(&a[3..], "alpha")?]);
            job.beta = None;
        }
        Ok(job)
    }
}

fn parse_job(path: &Path) -> anyhow::Result<JobSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("toml") => toml::from_str(&text).with_context(|| format!("parsing {}", path.display())),
        Some("json") => serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display())),
        _ => bail!("{}: expected a .json or .toml job file", path.display()),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::EllipticObstruction { .. } => 2,
        Error::BadReduction { .. }
        | Error::NotPrime(_)
        | Error::PrimeTooSmall(_)
        | Error::PrimeTooLarge(_)
        | Error::MultiplicityTooLarge { .. } => 3,
        _ => 1,
    }
}

fn fail(e: &Error) -> ExitCode {
    if let Error::EllipticObstruction { beta } = e {
        let body = json!({ "schema": SCHEMA, "error": "elliptic_obstruction", "beta": beta, "message": e.to_string() });
        println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
    }
    eprintln!("error: {e}");
    ExitCode::from(exit_code(e))
}

fn load_session(args: &JobArgs) -> Result<Session, ExitCode> {
    let job = args.load().map_err(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(1)
    })?;
    Session::from_job(&job).map_err(|e| fail(&e))
}

fn run(args: &JobArgs, json_out: Option<&Path>) -> ExitCode {
    let session = match load_session(args) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let report = match w2bound_core::run(&session) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let mut text = serde_json::to_string_pretty(&report).expect("serializable");
    text.push('\n');
    if let Some(path) = json_out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    print!("{text}");
    ExitCode::SUCCESS
}

fn verify(args: &JobArgs) -> ExitCode {
    let session = match load_session(args) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let outcomes = match w2bound_core::verify(&session) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let mut failed = Vec::new();
    for o in &outcomes {
        println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
        if !o.passed {
            failed.push(o.name.as_str());
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: failed invariants: {}", failed.join(", "));
        ExitCode::from(1)
    }
}

fn newton(path: &Path) -> ExitCode {
    let series: TruncatedSeries = match std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .and_then(|t| serde_json::from_str(&t).with_context(|| format!("parsing {}", path.display())))
    {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = series.validate() {
        return fail(&e);
    }
    let bound = match roots_in_pzp_upper(&series) {
        Ok(b) => b,
        Err(e) => return fail(&e),
    };
    let body = json!({
        "schema": SCHEMA,
        "segments": newton_polygon(&series, series.coeffs.len()),
        "roots_in_pzp_at_most": bound,
    });
    println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run { job, json_out } => run(job, json_out.as_deref()),
        Command::Verify { job } => verify(job),
        Command::Newton { series } => newton(series),
    }
}

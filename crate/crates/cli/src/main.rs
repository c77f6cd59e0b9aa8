use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use hyperoct::croscat::verify_category;
use hyperoct_cli::{parse_coefficients, parse_pipeline, parse_ring, run, AlgebraSource, JobSpec, ObjectRange};

#[derive(Parser)]
#[command(name = "hyperoct", version, about = "Hyperoctahedral homology of involutive algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build truncated complexes and compute their homology.
    Compute {
        /// JSON algebra spec, or one of: ground, c<n>, klein, s3.
        #[arg(long)]
        algebra: String,
        /// q, z or f<p>.
        #[arg(long, default_value = "q")]
        ring: String,
        /// Comma-separated: full, nerve, reduced, epi, slominska, extended.
        #[arg(long, value_delimiter = ',', required = true)]
        pipeline: Vec<String>,
        /// N or N1..N2.
        #[arg(long)]
        max_object: String,
        #[arg(long)]
        max_degree: usize,
        /// Coefficient module such as z/2 (needs --ring z).
        #[arg(long)]
        coefficients: Option<String>,
        /// Check chain-level identities and cross-pipeline agreement.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 50_000_000)]
        max_generators: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exhaustively check the category for objects up to [depth].
    VerifyCategory {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn job_from_args(cmd: &Command) -> Result<JobSpec> {
    let Command::Compute {
        algebra, ring, pipeline, max_object, max_degree, coefficients, verify, cache_dir, max_generators, ..
    } = cmd
    else {
        unreachable!()
    };
    let ring = parse_ring(ring)?;
    let mut job = JobSpec::new(
        AlgebraSource::resolve(algebra)?,
        ring,
        pipeline.iter().map(|p| parse_pipeline(p)).collect::<Result<_, _>>()?,
        0,
        *max_degree,
    );
    job.max_object = max_object.parse::<ObjectRange>()?;
    job.coefficients = coefficients.as_ref().map(|c| parse_coefficients(c).map(|m| (c.clone(), m))).transpose()?;
    job.verify = *verify;
    job.cache_dir = cache_dir.clone();
    job.max_generators = *max_generators;
    Ok(job)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(cmd: &Command) -> Result<u8> {
    match cmd {
        Command::Compute { out, .. } => {
            let job = job_from_args(cmd)?;
            let report = run(&job)?;
            report.write(out).with_context(|| format!("writing {}", out.display()))?;
            for (p, by_n) in &report.betti {
                for (n, b) in by_n {
                    println!("{p:<10} N={n} betti {b:?}");
                }
            }
            for f in &report.failures {
                eprintln!("{} N={}: {}", f.pipeline, f.max_object, f.message);
            }
            let failed: Vec<&String> =
                report.verifications.iter().filter(|(_, v)| **v == hyperoct::pipeline::Verdict::Fail).map(|(k, _)| k).collect();
            for name in failed {
                eprintln!("verification failed: {name}");
            }
            Ok(report.exit_code() as u8)
        }
        Command::VerifyCategory { depth, out } => {
            let report = verify_category(*depth);
            let json = serde_json::to_string_pretty(&report)? + "\n";
            match out {
                Some(path) => std::fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{json}"),
            }
            for c in &report.checks {
                eprintln!("{:<36} passed {:>8} failed {}", c.name, c.passed, c.failed);
            }
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

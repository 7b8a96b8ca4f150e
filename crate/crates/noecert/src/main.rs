//! Command-line front end: run verification scripts over the family grid
//! and emit certificates as JSON or Markdown. Exit code 0 means every
//! certificate passed; noted discrepancies are surfaced but do not fail
//! the run.

use clap::Parser;
use noecert::cert::render_markdown;
use noecert::{run_all, RunConfig, Theorem};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "noecert",
    about = "Machine-checked certificates for the rationality constructions over p-groups with a cyclic subgroup of index p^2"
)]
struct Args {
    /// Run the whole supported grid (p = 3: n in 3..5; p = 5: n in 3..4; p = 2: n in 4..6)
    #[arg(long)]
    all: bool,

    /// Primes to include, e.g. --p 3,5
    #[arg(long, value_delimiter = ',')]
    p: Vec<u32>,

    /// n values, as a list (4,5) or range (4..6, inclusive)
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,

    /// Restrict to one classification theorem: 3.1 or 3.2
    #[arg(long)]
    theorem: Option<String>,

    /// Restrict to specific family indices
    #[arg(long, value_delimiter = ',')]
    family: Vec<u32>,

    /// Report format
    #[arg(long, default_value = "json", value_parser = ["json", "md"])]
    report: String,

    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Exponent bound for the brute-force fixed-lattice oracle
    #[arg(long, default_value_t = 6)]
    oracle_depth: i64,

    /// Worker threads (0 = automatic)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn parse_ns(arg: &str) -> Result<Vec<u32>, String> {
    if let Some((a, b)) = arg.split_once("..") {
        let lo: u32 = a.trim().parse().map_err(|_| format!("bad range start {a}"))?;
        let hi: u32 = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| format!("bad range end {b}"))?;
        return Ok((lo..=hi).collect());
    }
    arg.split(',')
        .map(|s| s.trim().parse().map_err(|_| format!("bad n value {s}")))
        .collect()
}

fn main() -> ExitCode {
    let args = Args::parse();
    if !args.all && args.p.is_empty() && args.n.is_none() && args.theorem.is_none() && args.family.is_empty() {
        eprintln!("nothing selected; pass --all or a filter (--p / --n / --theorem / --family)");
        return ExitCode::from(2);
    }
    let theorem = match args.theorem.as_deref() {
        None => None,
        Some("3.1") => Some(Theorem::OddP),
        Some("3.2") => Some(Theorem::TwoGroups),
        Some(other) => {
            eprintln!("unknown theorem {other}; expected 3.1 or 3.2");
            return ExitCode::from(2);
        }
    };
    let ns = match args.n.as_deref().map(parse_ns).transpose() {
        Ok(v) => v,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let defaults = RunConfig::default();
    let cfg = RunConfig {
        ps: if args.p.is_empty() { defaults.ps } else { args.p },
        ns: ns.unwrap_or(defaults.ns),
        theorem,
        families: args.family,
        oracle_depth: args.oracle_depth,
        jobs: args.jobs,
    };
    let report = match run_all(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = match args.report.as_str() {
        "md" => render_markdown(&report),
        _ => report.to_json(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            eprintln!(
                "{} certificates: {} passed, {} failed -> {}",
                report.summary.total,
                report.summary.passed,
                report.summary.failed,
                path.display()
            );
        }
        None => println!("{rendered}"),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

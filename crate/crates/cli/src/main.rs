use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use rlift_cli::input::parse_input;
use rlift_cli::pipeline::{run, Emit, JobConfig, EXIT_INPUT};

const USAGE: &str = "\
usage: rlift [OPTIONS] INPUT

Construct the lift of the classical r-matrix of a quasitriangular Lie
bialgebra on the truncated dual formal group, build the braiding, verify
every axiom exactly, and emit machine-readable artifacts.

options:
  --degree N          truncation degree (default 4, minimum 3)
  --emit LIST         comma-separated subset of lift,braiding,report,audit
                      (default lift,report)
  --skip-validation   skip the input validation gate
  --out PATH          write the output document to PATH (default stdout)
  --seed-check SEED   rerun the construction with seeded section
                      perturbations and report whether the lift is identical
  --help              print this help

exit codes: 0 success, 1 axiom failure, 2 input error, 3 internal
invariant violation.";

fn parse_args(args: &[String]) -> Result<JobConfig, String> {
    let mut input: Option<PathBuf> = None;
    let mut degree = 4usize;
    let mut emit: Option<BTreeSet<Emit>> = None;
    let mut skip_validation = false;
    let mut out = None;
    let mut seed_check = None;

    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--degree" => {
                let v = it.next().ok_or("--degree needs a value")?;
                degree = v
                    .parse::<usize>()
                    .map_err(|_| format!("invalid degree {v:?}"))?;
            }
            "--emit" => {
                let v = it.next().ok_or("--emit needs a value")?;
                let mut set = BTreeSet::new();
                for part in v.split(',').filter(|p| !p.is_empty()) {
                    set.insert(Emit::parse(part)?);
                }
                if set.is_empty() {
                    return Err("--emit needs at least one target".into());
                }
                emit = Some(set);
            }
            "--skip-validation" => skip_validation = true,
            "--out" => out = Some(PathBuf::from(it.next().ok_or("--out needs a value")?)),
            "--seed-check" => {
                let v = it.next().ok_or("--seed-check needs a value")?;
                seed_check = Some(
                    v.parse::<u64>()
                        .map_err(|_| format!("invalid seed {v:?}"))?,
                );
            }
            other if other.starts_with('-') => {
                return Err(format!("unknown option {other:?}"));
            }
            path => {
                if input.replace(PathBuf::from(path)).is_some() {
                    return Err("exactly one input path expected".into());
                }
            }
        }
    }
    let input_path = input.ok_or("missing input path")?;
    if degree < 3 {
        return Err(format!("truncation degree must be >= 3, got {degree}"));
    }
    let mut config = JobConfig::new(input_path);
    config.degree = degree;
    if let Some(set) = emit {
        config.emit = set;
    }
    config.skip_validation = skip_validation;
    config.out = out;
    config.seed_check = seed_check;
    Ok(config)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--help" || a == "-h") {
        println!("{USAGE}");
        return ExitCode::SUCCESS;
    }
    let config = match parse_args(&args) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("{msg}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };

    let text = match std::fs::read_to_string(&config.input_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", config.input_path.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let bialgebra = match parse_input(&text) {
        Ok(l) => l,
        Err(msg) => {
            eprintln!("input error: {msg}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };

    let outcome = run(&config, bialgebra);
    let rendered = format!("{:#}", outcome.document);
    match &config.out {
        None => println!("{rendered}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered + "\n") {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
    }
    if outcome.exit_code != 0 {
        eprintln!("pipeline finished with exit code {}", outcome.exit_code);
    }
    ExitCode::from(outcome.exit_code as u8)
}

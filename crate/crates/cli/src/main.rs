use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hodgekit_cli::{list_suites, run_suite, Params};

#[derive(Parser)]
#[command(name = "hodgekit", version, about = "Run exact verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the available suites and their parameters.
    List,
    /// Run one suite and report every case.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    max_degree: Option<u64>,
    #[arg(long)]
    weight_bound: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the JSON report to PATH (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Exit 0 even when some cases are only verified up to a bound.
    #[arg(long)]
    allow_truncated: bool,
    /// Any other suite parameter, e.g. `--param r_max=2`.
    #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_key_value)]
    params: Vec<(String, u64)>,
}

fn parse_key_value(s: &str) -> Result<(String, u64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got {s}"))?;
    let v = v.parse().map_err(|e| format!("{k}: {e}"))?;
    Ok((k.to_string(), v))
}

fn list() {
    for s in list_suites() {
        println!("{}", s.name);
        println!("    {}", s.anchor);
        for p in s.params {
            let flag = format!("{}={}", p.name, p.default);
            println!("    {flag:<18} {} [{}..={}]", p.help, p.min, p.max);
        }
    }
}

fn verify(args: VerifyArgs) -> ExitCode {
    let mut params = Params::new();
    let named = [("p", args.p), ("n", args.n), ("max_degree", args.max_degree), ("weight_bound", args.weight_bound)];
    for (k, v) in named.into_iter().filter_map(|(k, v)| v.map(|v| (k.to_string(), v))).chain(args.params) {
        if params.insert(k.clone(), v).is_some() {
            eprintln!("error: parameter {k} given twice");
            return ExitCode::from(2);
        }
    }
    let report = match run_suite(&args.suite, &params, args.seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &args.json {
        Some(path) if path.as_os_str() == "-" => println!("{}", report.to_json()),
        Some(path) => {
            print!("{}", report.to_text());
            if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit_code(args.allow_truncated) as u8)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::List => {
            list();
            ExitCode::SUCCESS
        }
        Command::Verify(args) => verify(args),
    }
}

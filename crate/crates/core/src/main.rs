use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use centkit::json::{
    certificate_to_json, cycle_type_to_json, error_to_json, exit_code, generalized_type_to_json,
    green_type_to_json, matrix_from_str, variation_report_to_json,
};
use centkit::verify::{run_suite, VerifyOptions};
use centkit::{an_cent_equal, centralizers_conjugate, cycle_type, generalized_type, green_type, sn_cent_equal};
use centkit::{Error, Permutation, Result};

#[derive(Parser)]
#[command(name = "centkit", version, about = "Cycle types, centralizer conjugacy and permutation centralizers")]
struct Cli {
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = centkit::poly::DEFAULT_SEED)]
    seed: u64,
    /// Size cap for verification suites.
    #[arg(long, global = true)]
    scale: Option<usize>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock time in verification reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    Sn,
    An,
}

#[derive(Subcommand)]
enum Command {
    /// Cycle type, Green type and generalized type of a matrix file ("-" for stdin).
    Mtype { matrix: String },
    /// Decide whether Cent(X) and Cent(Y) are conjugate, with a certificate.
    Centconj { x: String, y: String },
    /// Decide whether two permutations have the same centralizer.
    Perm {
        g: String,
        h: String,
        #[arg(long, value_enum, default_value_t = GroupArg::Sn)]
        group: GroupArg,
        /// Degree of the ambient group; defaults to the largest point mentioned.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run a named verification suite.
    Verify { suite: String },
}

fn read_input(path: &str) -> Result<String> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    Ok(s)
}

/// JSON output and exit code of a successful command.
fn run(cli: &Cli) -> Result<(Value, u8)> {
    match &cli.command {
        Command::Mtype { matrix } => {
            let x = matrix_from_str(&read_input(matrix)?)?;
            let ct = cycle_type(&x)?;
            let gt = green_type(&ct);
            let gen = generalized_type(&x)?;
            let out = json!({
                "cycle_type": cycle_type_to_json(&ct),
                "green_type": green_type_to_json(&gt),
                "generalized_type": generalized_type_to_json(&gen),
                "display": {
                    "cycle_type": ct.to_string(),
                    "green_type": gt.to_string(),
                    "generalized_type": gen.to_string(),
                },
            });
            Ok((out, 0))
        }
        Command::Centconj { x, y } => {
            let x = matrix_from_str(&read_input(x)?)?;
            let y = matrix_from_str(&read_input(y)?)?;
            let cert = centralizers_conjugate(&x, &y)?;
            Ok((certificate_to_json(&cert), if cert.verdict { 0 } else { 1 }))
        }
        Command::Perm { g, h, group, n } => {
            let g = Permutation::parse(g, *n)?;
            let h = Permutation::parse(h, *n)?;
            let m = g.n().max(h.n());
            let (g, h) = (g.extend(m), h.extend(m));
            let report = match group {
                GroupArg::Sn => sn_cent_equal(&g, &h)?,
                GroupArg::An => an_cent_equal(&g, &h)?,
            };
            Ok((variation_report_to_json(&report), if report.equal { 0 } else { 1 }))
        }
        Command::Verify { suite } => {
            let opts = VerifyOptions { seed: cli.seed, scale: cli.scale, jobs: cli.jobs };
            let report = run_suite(suite, &opts)?;
            eprintln!(
                "{}: {} instances, {} failures, {:.2?}",
                report.suite,
                report.instances_checked,
                report.failures.len(),
                report.elapsed
            );
            Ok((report.to_json(cli.timing), if report.passed() { 0 } else { 1 }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, code) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            (error_to_json(&e), exit_code(&e) as u8)
        }
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string(&out),
        Format::Pretty => serde_json::to_string_pretty(&out),
    };
    println!("{}", text.expect("JSON values serialize"));
    ExitCode::from(code)
}

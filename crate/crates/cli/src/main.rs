//! `ulrich` — drive the exact verification suites from the command line.
//!
//! Four subcommands: `verify` runs the per-case check suites, `sample`
//! draws seeded points, `hilbert` computes exact Hilbert-function values
//! on random linear sections, `section` exports a restricted pencil as
//! JSON. Identical flags and seeds produce byte-identical output; wall
//! times go to stderr so stdout stays reproducible.

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ulrich_core::engine::{self, Report};
use ulrich_core::exactla::format_rat;

#[derive(Parser)]
#[command(
    name = "ulrich",
    version,
    about = "Exact verification of equivariant matrix pencils"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite of one case (or all of them).
    Verify(VerifyArgs),
    /// Print a seeded sample point, generic or on the hypersurface.
    Sample(SampleArgs),
    /// Exact Hilbert-function values on a random linear section.
    Hilbert(HilbertArgs),
    /// Export the pencil restricted to a random linear section.
    Section(SectionArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Case name, e.g. severi-a8, heptic7, freud-sl6, freud-spin12.
    #[arg(long, conflicts_with = "all")]
    case: Option<String>,
    /// Run every registered case.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the JSON report(s) to stdout instead of the summary lines.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report(s) to a file.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    case: String,
    /// Sample from the invariant hypersurface instead of the open orbit.
    #[arg(long)]
    on_hypersurface: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct HilbertArgs {
    #[arg(long)]
    case: String,
    /// Projective dimension d of the ambient section space P^d.
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    max_degree: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SectionArgs {
    #[arg(long)]
    case: String,
    /// Projective dimension d of the ambient section space P^d.
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file for the presentation JSON (stdout when omitted).
    #[arg(long)]
    out: Option<String>,
}

const EXIT_CHECK_FAILURE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not usage errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Sample(args) => cmd_sample(args),
        Command::Hilbert(args) => cmd_hilbert(args),
        Command::Section(args) => cmd_section(args),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let names: Vec<String> = if args.all {
        engine::case_names().iter().map(|s| s.to_string()).collect()
    } else {
        vec![args
            .case
            .ok_or_else(|| "pass --case <name> or --all".to_string())?]
    };

    let mut reports: Vec<Report> = Vec::new();
    for name in &names {
        let started = Instant::now();
        let report =
            engine::verify_case(name, args.trials, args.seed).map_err(|e| e.to_string())?;
        eprintln!(
            "{name}: {} checks in {:?}",
            report.checks.len(),
            started.elapsed()
        );
        reports.push(report);
    }

    let all_passed = reports.iter().all(Report::all_passed);
    let json = reports_json(&reports);
    if let Some(path) = &args.out {
        std::fs::write(path, &json).map_err(|e| format!("writing {path}: {e}"))?;
    }
    if args.json {
        println!("{json}");
    } else {
        for report in &reports {
            for check in &report.checks {
                let tag = if check.passed() { "PASS" } else { "FAIL" };
                println!("[{tag}] {}/{} ({})", report.case, check.id, check.anchor);
                if !check.passed() {
                    println!("       {}", check.witness);
                }
            }
        }
        println!(
            "{}: {} checks, {} failed",
            names.join(","),
            reports.iter().map(|r| r.checks.len()).sum::<usize>(),
            reports
                .iter()
                .flat_map(|r| &r.checks)
                .filter(|c| !c.passed())
                .count()
        );
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILURE)
    })
}

fn reports_json(reports: &[Report]) -> String {
    if reports.len() == 1 {
        reports[0].to_json()
    } else {
        let values: Vec<serde_json::Value> = reports
            .iter()
            .map(|r| serde_json::from_str(&r.to_json()).expect("round trip"))
            .collect();
        serde_json::to_string_pretty(&values).expect("serializes")
    }
}

fn cmd_sample(args: SampleArgs) -> Result<ExitCode, String> {
    let case = engine::find_case(&args.case).map_err(|e| e.to_string())?;
    let point = if args.on_hypersurface {
        case.sample_h(args.seed)
    } else {
        case.sample_generic(args.seed)
    };
    let h = case.invariant(&point);
    let coords: Vec<String> = point.iter().map(format_rat).collect();
    if args.json {
        let value = serde_json::json!({
            "case": case.name,
            "seed": args.seed,
            "on_hypersurface": args.on_hypersurface,
            "point": coords,
            "h": format_rat(&h),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializes")
        );
    } else {
        println!("{}", coords.join(" "));
        println!("h = {}", format_rat(&h));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_hilbert(args: HilbertArgs) -> Result<ExitCode, String> {
    let case = engine::find_case(&args.case).map_err(|e| e.to_string())?;
    let values = engine::hilbert_function(&case, args.dim, args.max_degree, args.seed)
        .map_err(|e| e.to_string())?;
    if args.json {
        let value = serde_json::json!({
            "case": case.name,
            "d": args.dim,
            "max_degree": args.max_degree,
            "seed": args.seed,
            "values": values,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializes")
        );
    } else {
        let rendered: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        println!("{}", rendered.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_section(args: SectionArgs) -> Result<ExitCode, String> {
    let case = engine::find_case(&args.case).map_err(|e| e.to_string())?;
    let (presentation, evidence) =
        engine::restrict_section(&case, args.dim, args.seed).map_err(|e| e.to_string())?;
    let json = presentation.to_json();
    match &args.out {
        Some(path) => {
            let mut f = std::fs::File::create(path).map_err(|e| format!("creating {path}: {e}"))?;
            f.write_all(json.as_bytes())
                .map_err(|e| format!("writing {path}: {e}"))?;
        }
        None => println!("{json}"),
    }
    for check in &evidence.checks {
        let tag = if check.passed() { "PASS" } else { "FAIL" };
        eprintln!("[{tag}] {}/{}: {}", evidence.case, check.id, check.witness);
    }
    Ok(if evidence.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILURE)
    })
}

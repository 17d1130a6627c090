//! Command-line front end for the frame constructions.
//!
//! Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage
//! error or malformed input, 3 a freshly generated frame failed its own
//! verification.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use etf_core::constructions::{conjecture_experiment_with_tol, ConstructionError};
use etf_core::frame::ConstructionTag;
use etf_core::io::FrameFile;
use etf_core::registry::{self, BuildError, BuildRequest};
use etf_core::verify::{check_frame, welch_target, DEFAULT_CHECK_TOL};

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SELF_VERIFICATION: u8 = 3;

/// Catalog sizes above this take minutes of eigensolves; refuse them.
const MAX_CATALOG_N: u64 = 128;
const MAX_EXPERIMENT_K: u32 = 7;

#[derive(Parser)]
#[command(
    name = "etf",
    version,
    about = "Construct and verify equiangular tight frames",
    after_help = "Constructions: paley-upper, paley-lower, conference-upper, conference-lower, \
                  zauner, drop-one-canonical, conference-etf"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a frame, write it to a JSON file, and self-verify it
    Generate {
        /// Construction name (see the list below)
        #[arg(long)]
        construction: String,
        /// Number of vectors in the produced frame
        #[arg(long)]
        n: Option<u64>,
        /// Field characteristic (alternative to --n)
        #[arg(long)]
        p: Option<u64>,
        /// Field extension degree (with --p; default 1)
        #[arg(long)]
        m: Option<u32>,
        /// Conference matrix exponent (order 2^k)
        #[arg(long)]
        k: Option<u32>,
        /// Vector to remove for drop-one-canonical (default 0)
        #[arg(long)]
        drop_index: Option<usize>,
        /// Additive character parameter for residue-based constructions (default 1)
        #[arg(long)]
        character_c: Option<u64>,
        /// Output path
        #[arg(long)]
        out: PathBuf,
        /// Output format (only json)
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Check equiangularity and tightness of a frame file
    Verify {
        /// Frame file to check
        input: PathBuf,
        /// Check tolerance
        #[arg(long, default_value_t = DEFAULT_CHECK_TOL)]
        tol: f64,
    },
    /// Construct and verify every frame with at most MAX-N vectors, as CSV
    Catalog {
        #[arg(long)]
        max_n: u64,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Drop-one experiment on the conference-matrix route
    Experiment {
        /// Conference exponent, 2 <= k <= 7
        #[arg(long)]
        k: u32,
        /// Check tolerance
        #[arg(long, default_value_t = DEFAULT_CHECK_TOL)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Generate {
            construction,
            n,
            p,
            m,
            k,
            drop_index,
            character_c,
            out,
            format,
        } => {
            let req = BuildRequest {
                n,
                p,
                m,
                k,
                drop_index,
                character_c,
            };
            cmd_generate(&construction, &req, &out, &format)
        }
        Command::Verify { input, tol } => cmd_verify(&input, tol),
        Command::Catalog { max_n, out } => cmd_catalog(max_n, &out),
        Command::Experiment { k, tol } => cmd_experiment(k, tol),
    };
    ExitCode::from(code)
}

/// Parameter-shaped construction failures are usage errors; identity or
/// spectrum failures mean the tool's own output is wrong.
fn exit_code_for(err: &ConstructionError) -> u8 {
    match err {
        ConstructionError::WrongResidueClass { .. }
        | ConstructionError::OrderTooLarge { .. }
        | ConstructionError::TooSmall { .. }
        | ConstructionError::IndexOutOfRange { .. }
        | ConstructionError::NotConference
        | ConstructionError::BadBorder
        | ConstructionError::Field(_)
        | ConstructionError::Character(_) => EXIT_USAGE,
        _ => EXIT_SELF_VERIFICATION,
    }
}

fn cmd_generate(construction: &str, req: &BuildRequest, out: &Path, format: &str) -> u8 {
    if format != "json" {
        eprintln!("error: unsupported format {format:?}; only json is available");
        return EXIT_USAGE;
    }
    let Some(strategy) = registry::lookup(construction) else {
        let names: Vec<&str> = ConstructionTag::ALL.iter().map(|t| t.as_str()).collect();
        eprintln!(
            "error: unknown construction {construction:?}; choose one of {}",
            names.join(", ")
        );
        return EXIT_USAGE;
    };
    let frame = match strategy.build(req) {
        Ok(frame) => frame,
        Err(BuildError::InvalidParameters(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
        Err(BuildError::Construction(err)) => {
            eprintln!("error: {err}");
            return exit_code_for(&err);
        }
    };

    let file = FrameFile::from_frame(&frame);
    if let Err(err) = std::fs::write(out, file.to_json()) {
        eprintln!("error: cannot write {}: {err}", out.display());
        return EXIT_USAGE;
    }

    let (n, d) = (frame.n(), frame.d());
    let target = welch_target(n as u64, d as u64).expect("valid frame dimensions");
    println!("construction: {}", strategy.tag());
    println!("(n, d) = ({n}, {d})");
    println!("target overlap^2 = {target} ((n-d)/(d(n-1)))");

    let report = check_frame(&frame, DEFAULT_CHECK_TOL);
    let worst = report
        .checks
        .iter()
        .map(|c| (c.measured - c.target).abs())
        .fold(0.0f64, f64::max);
    if report.verdict {
        println!("self-verification: PASS (max deviation {worst:.3e})");
        println!("wrote {}", out.display());
        EXIT_OK
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        eprintln!(
            "self-verification FAILED ({}; max deviation {worst:.3e})",
            failed.join(", ")
        );
        EXIT_SELF_VERIFICATION
    }
}

fn cmd_verify(input: &Path, tol: f64) -> u8 {
    let text = match std::fs::read_to_string(input) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", input.display());
            return EXIT_USAGE;
        }
    };
    let file = match FrameFile::from_json(&text) {
        Ok(file) => file,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
    };
    let frame = match file.to_frame() {
        Ok(frame) => frame,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
    };
    let report = check_frame(&frame, tol);
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    if report.verdict {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn cmd_catalog(max_n: u64, out: &Path) -> u8 {
    if max_n < 3 || max_n > MAX_CATALOG_N {
        eprintln!("error: --max-n must be between 3 and {MAX_CATALOG_N}");
        return EXIT_USAGE;
    }
    let mut rows: Vec<(usize, usize, &'static str, f64, bool)> = Vec::new();
    for strategy in registry::all() {
        for req in strategy.catalog_entries(max_n) {
            let frame = match strategy.build(&req) {
                Ok(frame) => frame,
                Err(err) => {
                    eprintln!("error: catalog build {} {req:?}: {err}", strategy.tag());
                    return EXIT_SELF_VERIFICATION;
                }
            };
            let target = welch_target(frame.n() as u64, frame.d() as u64)
                .expect("valid frame dimensions");
            let verified = check_frame(&frame, DEFAULT_CHECK_TOL).verdict;
            rows.push((
                frame.n(),
                frame.d(),
                strategy.tag().as_str(),
                target,
                verified,
            ));
        }
    }
    rows.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));

    let mut csv = String::from("n,d,construction,target_overlap_sq,verified\n");
    for (n, d, tag, target, verified) in &rows {
        csv.push_str(&format!("{n},{d},{tag},{target},{verified}\n"));
    }
    if let Err(err) = std::fs::write(out, csv) {
        eprintln!("error: cannot write {}: {err}", out.display());
        return EXIT_USAGE;
    }
    let all_verified = rows.iter().all(|r| r.4);
    println!("wrote {} rows to {}", rows.len(), out.display());
    if all_verified {
        EXIT_OK
    } else {
        eprintln!("error: some catalog rows failed verification");
        EXIT_CHECK_FAILED
    }
}

fn cmd_experiment(k: u32, tol: f64) -> u8 {
    if !(2..=MAX_EXPERIMENT_K).contains(&k) {
        eprintln!("error: --k must be between 2 and {MAX_EXPERIMENT_K}");
        return EXIT_USAGE;
    }
    match conjecture_experiment_with_tol(k, tol) {
        Ok(report) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            if report.verdict {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

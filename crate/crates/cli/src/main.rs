//! Command-line front end for the Grassmannian cohomology engine: tables of
//! `g` classes, oriented Betti numbers, the verification suites, and CSV/JSON
//! exporters.

mod export;
mod records;
mod suites;

use std::collections::VecDeque;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grasscoh::grassmann::gysin_report;
use grasscoh::swclasses::{g_vanishing_degrees_with_cap, DualClassTable};
use grasscoh::Error;
use serde_json::json;

use export::ExportFormat;
use records::VerificationRecord;
use suites::{suite_jobs, SuiteOptions};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_RESOURCE_CAP: u8 = 3;
const EXIT_ENGINE_ERROR: u8 = 4;

#[derive(Parser)]
#[command(
    name = "grasscoh",
    version,
    about = "Exact mod-2 cohomology tables and verification suites for real and oriented Grassmannians"
)]
struct Cli {
    /// Per-polynomial term limit before aborting with a resource error.
    #[arg(long, global = true, default_value_t = 4_000_000)]
    cap_terms: usize,

    /// Parameter-search size limit for presented-ring sweeps.
    #[arg(long, global = true, default_value_t = 4096)]
    cap_dim: usize,

    /// Worker threads for suite items.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Seed for the randomized sample portion of relations-a; exhaustive
    /// checks ignore it.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FileFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Commands {
    /// Print the g-class table and its vanishing degrees.
    Gi {
        /// Rank of the class family; at least 2.
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
        /// Largest degree to compute.
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Print oriented Betti numbers, surjectivity-failure degrees and the
    /// characteristic rank for the oriented Grassmannian over G(n,k).
    Betti {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Run a verification suite; one JSON line per sub-check, exit 0 only if
    /// every check passes.
    Verify {
        /// One of: lemma21, lemma31, thmA, thmB, relations-a, cup-bounds,
        /// prop34, thm-k5, ucharrank, homs, all.
        suite: String,
        /// Degree bound for sweep suites (lemma21, prop34).
        #[arg(long)]
        max: Option<u64>,
        /// Restrict to a single n where the suite sweeps n.
        #[arg(long)]
        n: Option<u32>,
        /// Rank selector for thm-k5.
        #[arg(long)]
        k: Option<u32>,
        /// Dyadic exponent selector for lemma31 / cup-bounds.
        #[arg(long)]
        t: Option<u32>,
        /// Random-sample count for relations-a divisibility.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Include wall-clock timings in records (breaks byte-stability).
        #[arg(long)]
        timings: bool,
    },
    /// Write a table to CSV or JSON.
    Export {
        /// One of: gi, betti, charrank, cup-bounds.
        #[arg(long)]
        target: String,
        /// Output path; relative paths resolve against $GRASSCOH_OUT_DIR
        /// when that variable is set.
        #[arg(long)]
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = FileFormat::Csv)]
        format: FileFormat,
        #[command(flatten)]
        range: ExportRange,
    },
}

#[derive(Args)]
struct ExportRange {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    max: Option<u32>,
    #[arg(long)]
    n_min: Option<u32>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::ResourceCap(_) => ExitCode::from(EXIT_RESOURCE_CAP),
                _ => ExitCode::from(EXIT_ENGINE_ERROR),
            }
        }
    }
}

fn run(cli: Cli) -> grasscoh::Result<ExitCode> {
    match cli.command {
        Commands::Gi { k, max, format } => {
            cmd_gi(k, max, cli.cap_terms, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Commands::Betti { n, k, format } => {
            cmd_betti(n, k, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Commands::Verify {
            suite,
            max,
            n,
            k,
            t,
            samples,
            timings,
        } => {
            let opts = SuiteOptions {
                max,
                n,
                k,
                t,
                seed: cli.seed,
                samples,
                cap_terms: cli.cap_terms,
                cap_dim: cli.cap_dim,
            };
            cmd_verify(&suite, &opts, cli.jobs.max(1), timings)
        }
        Commands::Export {
            target,
            path,
            format,
            range,
        } => {
            cmd_export(&target, &path, format, &range, cli.cap_terms)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_gi(k: u32, max: u32, cap_terms: usize, format: TableFormat) -> grasscoh::Result<()> {
    let table = DualClassTable::with_term_cap(k, max, cap_terms)?;
    let vanishing: Vec<u32> = g_vanishing_degrees_with_cap(k, max, cap_terms)?
        .into_iter()
        .collect();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        TableFormat::Text => {
            for i in 0..=max {
                let g = table.g(i);
                writeln!(out, "g[{i}] = {g}").ok();
            }
            writeln!(out, "vanishing degrees in [2, {max}]: {vanishing:?}").ok();
        }
        TableFormat::Json => {
            let rows: Vec<_> = (0..=max)
                .map(|i| json!({"i": i, "g": format!("{}", table.g(i))}))
                .collect();
            let value = json!({"k": k, "max": max, "g": rows, "vanishing": vanishing});
            writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap()).ok();
        }
    }
    Ok(())
}

fn cmd_betti(n: u32, k: u32, format: TableFormat) -> grasscoh::Result<()> {
    let report = gysin_report(n, k)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        TableFormat::Text => {
            let betti: Vec<String> = report.betti.iter().map(|b| b.to_string()).collect();
            writeln!(out, "betti: {}", betti.join(",")).ok();
            writeln!(out, "failure degrees: {:?}", report.failure_degrees).ok();
            writeln!(out, "first failure: {}", report.first_failure()).ok();
            writeln!(out, "charrank: {}", report.charrank).ok();
        }
        TableFormat::Json => {
            let value = json!({
                "n": n,
                "k": k,
                "betti": report.betti,
                "failure_degrees": report.failure_degrees,
                "first_failure": report.first_failure(),
                "charrank": report.charrank,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap()).ok();
        }
    }
    Ok(())
}

fn cmd_verify(
    suite: &str,
    opts: &SuiteOptions,
    jobs: usize,
    timings: bool,
) -> grasscoh::Result<ExitCode> {
    let work = suite_jobs(suite, opts)?;
    let total = work.len();
    let queue: Mutex<VecDeque<(usize, suites::Job)>> =
        Mutex::new(work.into_iter().enumerate().collect());
    let results: Mutex<Vec<Option<grasscoh::Result<Vec<VerificationRecord>>>>> =
        Mutex::new((0..total).map(|_| None).collect());
    let timer = Instant::now();
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(total.max(1)) {
            scope.spawn(|| loop {
                let item = queue.lock().unwrap().pop_front();
                let Some((index, job)) = item else {
                    break;
                };
                let started = Instant::now();
                let mut outcome = job();
                if timings {
                    if let Ok(records) = outcome.as_mut() {
                        let elapsed = started.elapsed().as_millis();
                        for record in records.iter_mut() {
                            record.elapsed_ms = Some(elapsed);
                        }
                    }
                }
                results.lock().unwrap()[index] = Some(outcome);
            });
        }
    });

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut all_pass = true;
    let mut first_error: Option<Error> = None;
    for slot in results.into_inner().unwrap() {
        match slot.expect("job ran") {
            Ok(records) => {
                for record in records {
                    all_pass &= record.passed();
                    writeln!(out, "{}", serde_json::to_string(&record).unwrap()).ok();
                }
            }
            Err(err) => {
                all_pass = false;
                if first_error.is_none() {
                    first_error = Some(err);
                }
            }
        }
    }
    if timings {
        eprintln!(
            "suite '{suite}' finished in {} ms",
            timer.elapsed().as_millis()
        );
    }
    if let Some(err) = first_error {
        return Err(err);
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn cmd_export(
    target: &str,
    path: &std::path::Path,
    format: FileFormat,
    range: &ExportRange,
    cap_terms: usize,
) -> grasscoh::Result<()> {
    let resolved = match std::env::var_os("GRASSCOH_OUT_DIR") {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    };
    let file = File::create(&resolved)
        .map_err(|e| Error::InvalidInput(format!("cannot create {}: {e}", resolved.display())))?;
    let mut out = BufWriter::new(file);
    let format = match format {
        FileFormat::Csv => ExportFormat::Csv,
        FileFormat::Json => ExportFormat::Json,
    };
    match target {
        "gi" => {
            let k = range
                .k
                .ok_or_else(|| Error::InvalidInput("gi export needs --k".into()))?;
            let max = range
                .max
                .ok_or_else(|| Error::InvalidInput("gi export needs --max".into()))?;
            export::export_gi(&mut out, k, max, cap_terms, format)
        }
        "betti" => {
            let n = range
                .n
                .ok_or_else(|| Error::InvalidInput("betti export needs --n".into()))?;
            let k = range
                .k
                .ok_or_else(|| Error::InvalidInput("betti export needs --k".into()))?;
            export::export_betti(&mut out, n, k, format)
        }
        "charrank" => {
            let n_min = range.n_min.unwrap_or(8);
            let n_max = range.n_max.unwrap_or(32);
            export::export_charrank(&mut out, n_min, n_max, format)
        }
        "cup-bounds" => {
            let t = range.t.unwrap_or(4);
            export::export_cup_bounds(&mut out, t, format)
        }
        other => Err(Error::InvalidInput(format!(
            "unknown export target '{other}'; expected gi, betti, charrank or cup-bounds"
        ))),
    }
}

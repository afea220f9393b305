use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gradlift::corpus::{corpus_run, render_summary, Recipe};
use gradlift::report::{line_col, parse_job, render_text, run_analysis, Analysis, AnalysisReport, JobSpec};
use gradlift::Error;

#[derive(Parser)]
#[command(
    name = "gradlift",
    version,
    about = "Tangent cones, lifted resolutions and Betti comparisons in k[[x]]"
)]
struct Cli {
    /// More log output (-v info, -vv debug, -vvv trace).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the analyses listed in a job file.
    Analyze {
        file: PathBuf,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Overrides the seed given in the job file.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Analyse the monomial curve t^(a1, …, an).
    Semigroup {
        #[arg(required = true)]
        exponents: Vec<u32>,
        /// Comma-separated analyses, or `full`.
        #[arg(long, default_value = "full")]
        analyze: String,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the structure theorems over random instances.
    Corpus {
        /// binomial, monomial, borel, super-regular or semigroup.
        #[arg(long)]
        recipe: String,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn fail(e: &Error, source: Option<&str>) -> ExitCode {
    let at = match (e, source) {
        (Error::Parse { pos, .. } | Error::UnknownVariable { pos, .. }, Some(text)) => {
            let (l, c) = line_col(text, *pos);
            format!(" (line {l}, column {c})")
        }
        _ => String::new(),
    };
    eprintln!("error: {e}{at}");
    ExitCode::from(e.exit_code() as u8)
}

fn write_json(path: &Option<PathBuf>, text: &str) -> Result<(), ExitCode> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", p.display());
            ExitCode::from(1)
        })?;
    }
    Ok(())
}

fn finish(spec: &JobSpec, json: &Option<PathBuf>) -> ExitCode {
    let report: AnalysisReport = match run_analysis(spec) {
        Ok(r) => r,
        Err(e) => return fail(&e, None),
    };
    print!("{}", render_text(&report));
    if let Err(code) = write_json(json, &report.to_json()) {
        return code;
    }
    if report.capped() {
        eprintln!("some analyses hit a resource cap; see the capped sections");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}

fn parse_analyses(list: &str) -> Result<Vec<Analysis>, Error> {
    let mut out = Vec::new();
    for w in list.split(',').map(str::trim).filter(|w| !w.is_empty()) {
        out.extend(Analysis::parse(w).ok_or_else(|| Error::Invalid(format!("unknown analysis `{w}`")))?);
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    match cli.command {
        Command::Analyze { file, json, seed } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return ExitCode::from(1);
                }
            };
            let mut spec = match parse_job(&text) {
                Ok(s) => s,
                Err(e) => return fail(&e, Some(&text)),
            };
            if let Some(s) = seed {
                spec.seed = s;
            }
            finish(&spec, &json)
        }
        Command::Semigroup {
            exponents,
            analyze,
            json,
            seed,
        } => {
            let spec = match parse_analyses(&analyze).and_then(|a| JobSpec::semigroup(&exponents, &a, seed)) {
                Ok(s) => s,
                Err(e) => return fail(&e, None),
            };
            finish(&spec, &json)
        }
        Command::Corpus {
            recipe,
            count,
            seed,
            json,
        } => {
            let recipe: Recipe = match recipe.parse() {
                Ok(r) => r,
                Err(e) => return fail(&e, None),
            };
            let summary = match corpus_run(recipe, count, seed) {
                Ok(s) => s,
                Err(e) => return fail(&e, None),
            };
            print!("{}", render_summary(&summary));
            if let Err(code) = write_json(
                &json,
                &serde_json::to_string_pretty(&summary).expect("summary serializes"),
            ) {
                return code;
            }
            if summary.fatal() {
                ExitCode::from(3)
            } else if summary.capped() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}

//! Command-line driver: parse an action, run the requested analysis, print
//! a deterministic report.
//!
//! Exit codes: 0 on success, 1 on analysis errors (with a JSON error object
//! on standard error), 2 on usage or file-parse errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use enriques_cli::actionfile::{parse_action_spec, ActionSpec};
use enriques_cli::report::{
    build_bicanonical_report, build_census_table, build_classify_report, build_codes_report,
    build_cover_report, build_report, render_bicanonical_text, render_census_text,
    render_classify_text, render_codes_text, render_cover_text, render_report_text, ErrorObject,
};
use enriques_core::census::run_census;
use enriques_core::classify::{bicanonical_solutions, degree_bound, match_template};
use enriques_core::examples;
use enriques_core::group::ActionGroup;
use enriques_core::pipeline::{analyze, subquotient_analysis, SubgroupSelection};

#[derive(Parser)]
#[command(
    name = "enriques",
    about = "Exact analysis of quotients of a product of two elliptic curves \
             by sign-translation automorphism groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on one of the two built-in actions.
    Example {
        /// Which built-in action: 1 (order 4) or 2 (order 8).
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        /// Emit the report as a single JSON document.
        #[arg(long)]
        json: bool,
    },
    /// Run the full pipeline on an action file.
    Analyze {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Verify and match an action against the two templates.
    Classify {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Even-set code of the nodes of an action's quotient.
    Codes {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Analyze the intermediate quotients by subgroups and cross-check each
    /// against the cover-invariant formula.
    Cover {
        path: PathBuf,
        /// `all` for every proper nontrivial subgroup, or a 1-based index
        /// into that list.
        #[arg(long, default_value = "all")]
        subgroup: String,
        #[arg(long)]
        json: bool,
    },
    /// Bicanonical degree bound for a given K^2, with the intersection
    /// solutions at K^2 = 4.
    Bicanonical {
        k2: i64,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate all small actions within a translation-denominator bound
    /// and tabulate their verdicts.
    Census {
        /// Translation denominator bound (1 or 2).
        #[arg(long, default_value_t = 2)]
        denom_bound: i64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report(),
    }
}

enum AppError {
    /// Malformed input file or invalid flag value: exit 2.
    Usage(String),
    /// The analysis itself rejected the action: exit 1.
    Analysis(enriques_core::Error),
}

impl AppError {
    fn report(self) -> ExitCode {
        match self {
            AppError::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            AppError::Analysis(e) => {
                let obj = ErrorObject::new(e.code(), e.to_string());
                eprintln!("{}", serde_json::to_string(&obj).expect("error serializes"));
                ExitCode::from(1)
            }
        }
    }
}

impl From<enriques_core::Error> for AppError {
    fn from(e: enriques_core::Error) -> Self {
        AppError::Analysis(e)
    }
}

fn load_spec(path: &PathBuf) -> Result<ActionSpec, AppError> {
    let text = fs::read_to_string(path)
        .map_err(|e| AppError::Usage(format!("{}: {e}", path.display())))?;
    parse_action_spec(&text)
        .map_err(|e| AppError::Usage(format!("{}:{e}", path.display())))
}

fn build_group(spec: &ActionSpec) -> Result<ActionGroup, AppError> {
    Ok(ActionGroup::generate_default(&spec.generator_autos())?)
}

fn emit<T: Serialize>(json: bool, value: &T, text: String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("report serializes")
        );
    } else {
        print!("{text}");
    }
}

fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Example { which, json } => {
            let group = match which {
                1 => examples::example_1(),
                2 => examples::example_2(),
                _ => unreachable!("clap range"),
            };
            let analysis = analyze(&group)?;
            let report = build_report(Some(format!("example {which}")), &analysis);
            emit(json, &report, render_report_text(&report));
            Ok(())
        }
        Command::Analyze { path, json } => {
            let spec = load_spec(&path)?;
            let group = build_group(&spec)?;
            let analysis = analyze(&group)?;
            let report = build_report(spec.label.clone(), &analysis);
            emit(json, &report, render_report_text(&report));
            Ok(())
        }
        Command::Classify { path, json } => {
            let spec = load_spec(&path)?;
            let group = build_group(&spec)?;
            let template = match_template(&group);
            let report = build_classify_report(spec.label.clone(), &group, &template);
            emit(json, &report, render_classify_text(&report));
            Ok(())
        }
        Command::Codes { path, json } => {
            let spec = load_spec(&path)?;
            let group = build_group(&spec)?;
            let analysis = analyze(&group)?;
            let report = build_codes_report(spec.label.clone(), &analysis);
            emit(json, &report, render_codes_text(&report));
            Ok(())
        }
        Command::Cover {
            path,
            subgroup,
            json,
        } => {
            let spec = load_spec(&path)?;
            let group = build_group(&spec)?;
            let mut rows = subquotient_analysis(&group, SubgroupSelection::ProperNontrivial)?;
            match subgroup.as_str() {
                "all" => {}
                s => {
                    let index: usize = s.parse().map_err(|_| {
                        AppError::Usage(format!(
                            "--subgroup takes `all` or a 1-based index, got `{s}`"
                        ))
                    })?;
                    if index == 0 || index > rows.len() {
                        return Err(AppError::Usage(format!(
                            "subgroup index {index} out of range 1..={}",
                            rows.len()
                        )));
                    }
                    rows = vec![rows[index - 1].clone()];
                }
            }
            let report = build_cover_report(spec.label.clone(), group.order(), &rows);
            emit(json, &report, render_cover_text(&report));
            Ok(())
        }
        Command::Bicanonical { k2, json } => {
            let bound = degree_bound(k2)?;
            let solutions = if k2 == 4 {
                bicanonical_solutions()
            } else {
                Vec::new()
            };
            let report = build_bicanonical_report(k2, bound, &solutions);
            emit(json, &report, render_bicanonical_text(&report));
            Ok(())
        }
        Command::Census { denom_bound, json } => {
            if !(1..=2).contains(&denom_bound) {
                return Err(AppError::Usage(format!(
                    "--denom-bound must be 1 or 2, got {denom_bound}"
                )));
            }
            let report = run_census(denom_bound)?;
            let table = build_census_table(&report);
            emit(json, &table, render_census_text(&table));
            Ok(())
        }
    }
}

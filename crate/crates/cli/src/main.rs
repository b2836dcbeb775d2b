use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use curvesing::report::{
    analyze, load_curve, render_report, run_corpus, validate, AnalyzeOptions, CurveDocument, PlaneDocument,
    SingularityDocument,
};
use curvesing::spectral::{Format, DEFAULT_HC_WINDOW, DEFAULT_TAIL_WINDOW};

#[derive(Parser)]
#[command(name = "curvesing", version, about = "Exact invariants of curve singularities and E2-degeneration verdicts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

#[derive(Args)]
struct Options {
    /// Fixed jet truncation order (default: automatic)
    #[arg(long, global = true)]
    truncation: Option<u32>,
    /// Output format: text or json
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    format: Format,
    /// Range of cyclic pieces F_m to display, as `lo,hi`
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_window)]
    hc_window: Option<(i64, i64)>,
    /// Last tail column shown on Hodge pages
    #[arg(long, global = true)]
    tail_window: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a curve document
    Analyze { file: PathBuf },
    /// Analyze a single plane singularity given by its equation
    Sing {
        expr: String,
        /// The two variable names, comma separated
        #[arg(long, default_value = "u,v")]
        vars: String,
    },
    /// Run the builtin corpus and print the summary table
    Corpus,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: curvesing::spectral::SpectralError| e.to_string())
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected `lo,hi`")?;
    let lo = a.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let hi = b.trim().parse::<i64>().map_err(|e| e.to_string())?;
    if lo > hi {
        return Err(format!("empty window {lo},{hi}"));
    }
    Ok((lo, hi))
}

const INPUT_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = AnalyzeOptions {
        truncation: cli.options.truncation,
        hc_window: cli.options.hc_window.unwrap_or(DEFAULT_HC_WINDOW),
        tail_window: cli.options.tail_window.unwrap_or(DEFAULT_TAIL_WINDOW),
    };
    let format = cli.options.format;
    let input = match &cli.command {
        Command::Corpus => {
            let run = run_corpus(&opts);
            match format {
                Format::Text => print!("{}", run.table_text()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&run.table_json()).expect("json")),
            }
            return ExitCode::from(run.exit_code() as u8);
        }
        Command::Analyze { file } => load_curve(file),
        Command::Sing { expr, vars } => {
            let doc = CurveDocument {
                label: format!("germ {expr}"),
                genus: 0,
                notes: String::new(),
                singularities: vec![SingularityDocument::Plane(PlaneDocument {
                    label: expr.clone(),
                    f: expr.clone(),
                    variables: vars.split(',').map(|s| s.trim().to_string()).collect(),
                    weights: None,
                    branches: None,
                    asserted: None,
                })],
            };
            validate(&doc)
        }
    };
    let input = match input {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(INPUT_ERROR);
        }
    };
    match analyze(&input, &opts) {
        Ok(report) => {
            print!("{}", render_report(&report, format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}


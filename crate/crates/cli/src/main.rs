mod report;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use billiard_covers::combinatorics::TriangleSignature;
use billiard_covers::covers::{feasible_degrees, filter_chain, search_with_threads, Verdict};
use billiard_covers::cyclotomic::RealCyclotomic;
use billiard_covers::error::Error;
use billiard_covers::fingerprint::{geodesic_segments, validate_punctures};
use billiard_covers::svg::{to_svg, SvgOptions};
use billiard_covers::tiling::Tiling;
use billiard_covers::unfold::unfold;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::Envelope;

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "bcovers", version, about = "Translation covers between triangular billiards surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex classes, genus, shape and holonomy field of X(a1,a2,a3).
    Info { a1: i64, a2: i64, a3: i64 },
    /// Fingerprint of the points over one vertex.
    Fingerprint {
        a1: i64,
        a2: i64,
        a3: i64,
        #[arg(long)]
        vertex: usize,
        /// Vertex class to ignore as a target; repeatable.
        #[arg(long = "puncture")]
        punctures: Vec<usize>,
    },
    /// Writes the unfolding as SVG.
    Svg {
        a1: i64,
        a2: i64,
        a3: i64,
        #[arg(short, long)]
        output: PathBuf,
        /// Overlay the shortest geodesics at the point over this vertex.
        #[arg(long)]
        geodesics: Option<usize>,
        #[arg(long = "puncture")]
        punctures: Vec<usize>,
        /// Print copy indices.
        #[arg(long)]
        labels: bool,
    },
    /// Runs every filter on one ordered pair X(a) -> X(b).
    Pair {
        #[arg(long = "from", num_args = 3, required = true, allow_negative_numbers = true)]
        source: Vec<i64>,
        #[arg(long = "to", num_args = 3, required = true, allow_negative_numbers = true)]
        target: Vec<i64>,
    },
    /// Classifies all ordered pairs with Q <= qmax.
    Search {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        qmax: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Worker threads; the report does not depend on it.
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    Domain(Error),
    Io(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalTrichotomyViolation { .. } | Error::MapInconsistent(_) => {
                Failure::Internal(e.to_string())
            }
            other => Failure::Domain(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(cli.command, args) {
        Ok(code) => code,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn signature(a1: i64, a2: i64, a3: i64) -> Result<TriangleSignature, Failure> {
    Ok(TriangleSignature::normalize(a1, a2, a3)?)
}

fn emit<P: Serialize>(command: &str, args: Vec<String>, payload: P) -> Result<(), Failure> {
    let env = Envelope {
        tool: report::TOOL,
        version: report::VERSION,
        command: command.to_string(),
        args,
        payload,
    };
    let mut s =
        serde_json::to_string_pretty(&env).map_err(|e| Failure::Internal(e.to_string()))?;
    s.push('\n');
    write_stdout(&s)
}

fn write_stdout(s: &str) -> Result<(), Failure> {
    match std::io::stdout().lock().write_all(s.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Internal(e.to_string())),
        _ => Ok(()),
    }
}

fn run(command: Command, args: Vec<String>) -> Result<ExitCode, Failure> {
    match command {
        Command::Info { a1, a2, a3 } => {
            let sig = signature(a1, a2, a3)?;
            emit("info", args, report::info(&sig)?)?;
        }
        Command::Fingerprint { a1, a2, a3, vertex, punctures } => {
            let sig = signature(a1, a2, a3)?;
            let punctured: BTreeSet<usize> = punctures.into_iter().collect();
            emit("fingerprint", args, report::fingerprint_info(&sig, vertex, &punctured)?)?;
        }
        Command::Svg { a1, a2, a3, output, geodesics, punctures, labels } => {
            let sig = signature(a1, a2, a3)?;
            let surface = unfold(&sig, RealCyclotomic::one())?;
            let mut options = SvgOptions { overlay: Vec::new(), labels };
            if let Some(v) = geodesics {
                let punctured: BTreeSet<usize> = punctures.into_iter().collect();
                validate_punctures(&sig, v, &punctured)?;
                // the point over v containing copy 0
                options.overlay = geodesic_segments(&surface, v, 0, &punctured)?;
            }
            let svg = to_svg(&surface, &options);
            std::fs::write(&output, &svg)
                .map_err(|e| Failure::Io(format!("{}: {e}", output.display())))?;
            #[derive(Serialize)]
            struct Written {
                path: String,
                polygons: usize,
                overlay_segments: usize,
                bytes: usize,
            }
            emit(
                "svg",
                args,
                Written {
                    path: output.display().to_string(),
                    polygons: surface.tile_count(),
                    overlay_segments: options.overlay.len(),
                    bytes: svg.len(),
                },
            )?;
        }
        Command::Pair { source, target } => {
            let a = signature(source[0], source[1], source[2])?;
            let b = signature(target[0], target[1], target[2])?;
            let verdict = filter_chain(&a, &b)?;
            let descriptors = match &verdict {
                Verdict::InFamily { descriptors } => descriptors.clone(),
                _ => Vec::new(),
            };
            let undecided = matches!(verdict, Verdict::Undecided { .. });
            emit(
                "pair",
                args,
                report::Pair {
                    source: a.to_string(),
                    target: b.to_string(),
                    feasible_degrees: feasible_degrees(&a.canonical(), &b.canonical())
                        .into_iter()
                        .collect(),
                    verdict: report::Row::new(&a, &b, &verdict),
                    descriptors,
                },
            )?;
            if undecided {
                return Ok(ExitCode::from(EXIT_INTERNAL));
            }
        }
        Command::Search { qmax, format, threads } => {
            let threads = if threads == 0 {
                std::thread::available_parallelism().map_or(1, |n| n.get())
            } else {
                threads
            };
            let r = search_with_threads(qmax, threads)?;
            match format {
                Format::Json => emit("search", args, report::search(&r))?,
                Format::Csv => {
                    let s = report::search_csv(&r).map_err(|e| Failure::Internal(e.to_string()))?;
                    write_stdout(&s)?;
                }
            }
            if r.undecided > 0 {
                eprintln!("{} undecided pairs", r.undecided);
                return Ok(ExitCode::from(EXIT_INTERNAL));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

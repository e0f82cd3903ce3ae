//! `mpg`: command-line front end for mpg-core.
//!
//! Exit codes: 0 success, 2 bad input or violated precondition, 3 a step
//! that a theorem guarantees did not succeed.

mod commands;
mod output;

use clap::{Parser, Subcommand};
use mpg_core::Error;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mpg", version, about = "Maximal planar graphs: colorings, Kempe classes, UB-cycles, base modules, wheel operators")]
struct Cli {
    /// Print JSON instead of key=value text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (default: available cores).
    #[arg(long, global = true, env = "MPG_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a .rot file is a maximal planar graph.
    Validate { file: PathBuf },
    /// Count 4-colorings up to color permutation.
    Colorings {
        file: PathBuf,
        /// Also list the canonical colorings.
        #[arg(long)]
        all: bool,
    },
    /// Partition the colorings into Kempe classes.
    KempeClasses {
        file: PathBuf,
        /// List class members.
        #[arg(long)]
        members: bool,
    },
    /// UB-cycles of every coloring and the UBCMPG type.
    Ubc { file: PathBuf },
    /// Analyze an SMPG bounded by a 4-cycle (the `outer:` line fixes v1..v4).
    BaseModule {
        file: PathBuf,
        /// Largest number of interior vertices of a mate tried when
        /// deciding whether a cycle is a UB-cycle.
        #[arg(long, default_value_t = 2)]
        mate_bound: usize,
    },
    /// Apply a wheel operator, e.g. `apply e4wo 1,2,3 g.rot`.
    Apply {
        op: String,
        /// Comma-separated 1-based site vertices.
        site: String,
        file: PathBuf,
        /// Coloring to propagate (`v:color` lines).
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Write the resulting graph here instead of into the record.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Four-color a triangulation with minimum degree 5 through a base module.
    Transform {
        #[arg(required_unless_present = "replay")]
        file: Option<PathBuf>,
        /// Write the step trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Re-execute a saved trace instead.
        #[arg(long, conflicts_with_all = ["file", "trace"])]
        replay: Option<PathBuf>,
        /// Start from a coloring that needs the module steps.
        #[arg(long)]
        force_module: bool,
    },
    /// Enumerate triangulations up to isomorphism.
    Generate {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        min_degree: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        /// Surplus parallel edges allowed in intermediate graphs.
        #[arg(long, default_value_t = 1)]
        max_parallel_excess: usize,
    },
    /// Classify generated UBCMPGs and check the degree-5 configurations.
    Scan {
        #[arg(long)]
        max_order: usize,
        #[arg(long, default_value_t = 4)]
        min_degree: usize,
    },
}

fn run(cli: &Cli) -> mpg_core::Result<commands::Outcome> {
    match &cli.command {
        Command::Validate { file } => commands::validate(file),
        Command::Colorings { file, all } => commands::colorings(file, *all),
        Command::KempeClasses { file, members } => commands::kempe_classes(file, *members),
        Command::Ubc { file } => commands::ubc(file),
        Command::BaseModule { file, mate_bound } => commands::base_module(file, *mate_bound),
        Command::Apply {
            op,
            site,
            file,
            coloring,
            out,
        } => commands::apply_op(op, site, file, coloring.as_deref(), out.as_deref()),
        Command::Transform {
            file,
            trace,
            replay,
            force_module,
        } => match (replay, file) {
            (Some(r), _) => commands::transform_replay(r),
            (None, Some(f)) => commands::transform(f, trace.as_deref(), *force_module),
            (None, None) => Err(Error::Precondition("transform needs a file or --replay".into())),
        },
        Command::Generate {
            max_order,
            min_degree,
            out,
            max_parallel_excess,
        } => commands::generate_cmd(*max_order, *min_degree, *max_parallel_excess, out),
        Command::Scan { max_order, min_degree } => commands::scan(*max_order, *min_degree),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot set up {n} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&out.value).expect("values serialize") + "\n"
            } else if let Command::Colorings { .. } = cli.command {
                commands::colorings_text(&out.value)
            } else {
                output::to_text(&out.value)
            };
            // A closed pipe (e.g. `| head`) is not an error of the command.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            match out.alarm {
                Some(msg) => {
                    eprintln!("alarm: {msg}");
                    ExitCode::from(3)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_alarm() { 3 } else { 2 })
        }
    }
}

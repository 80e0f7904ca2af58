//! Thin CLI over the library; see the `examples/` directory for the
//! library-first programs this mirrors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mapcut::harness::{
    cmd_constants, cmd_enumerate, cmd_gw, cmd_sample, cmd_series, cmd_singular, HarnessError,
    OutputFormat, RunConfig, SeriesKind,
};
use mapcut::subcrit::MapClass;

#[derive(Parser)]
#[command(
    name = "mapcut",
    about = "Exact series and uniform random sampling for the cut-vertex and block structure of rooted planar maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact coefficient tables (M, Ea, M0, q, blocks) with derived means.
    Series {
        /// Which series: M | Ea | M0 | q | blocks
        #[arg(long, default_value = "M")]
        which: String,
        #[arg(long, default_value_t = 20)]
        order: usize,
        #[arg(long, value_parser = parse_format, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive small-n census, cross-checked against the exact series.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Uniform random maps: cut vertices, blocks, vertices, root degree.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// 0 uses the rayon default.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long, value_parser = parse_format, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Histogram bin-count override (default Freedman-Diaconis).
        #[arg(long)]
        bins: Option<usize>,
    },
    /// Every analytic constant vs its target; nonzero exit on any miss.
    Constants {
        /// Also run the order-300 singular-constant extrapolations.
        #[arg(long)]
        singular: bool,
    },
    /// Conditioned Galton-Watson cut-vertex simulation for tree-like classes.
    Gw {
        /// outerplanar | bipartite-outerplanar
        #[arg(long, default_value = "outerplanar")]
        class: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long, value_parser = parse_format, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        bins: Option<usize>,
    },
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        other => Err(format!("unknown format {other}; use json or csv")),
    }
}

fn run() -> Result<(), HarnessError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Series {
            which,
            order,
            format: _,
            out,
        } => {
            let kind = SeriesKind::from_name(&which)
                .ok_or_else(|| HarnessError::Config(format!("unknown series {which}")))?;
            let table = cmd_series(kind, order)?;
            let text = serde_json::to_string_pretty(&table).expect("table serializes");
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => println!("{text}"),
            }
            Ok(())
        }
        Command::Enumerate { n } => {
            let report = cmd_enumerate(n)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            Ok(())
        }
        Command::Sample {
            n,
            samples,
            seed,
            threads,
            format,
            out,
            bins,
        } => {
            let cfg = RunConfig {
                n,
                samples,
                seed,
                threads,
                class: MapClass::General,
                format,
                out,
                bins,
            };
            let report = cmd_sample(&cfg)?;
            println!("{}", report.to_json());
            Ok(())
        }
        Command::Constants { singular } => {
            let report = cmd_constants()?;
            print!("{}", report.render_text());
            if singular {
                let checks = cmd_singular(300)?;
                println!("singular extrapolations at order 300:");
                for (name, c) in [
                    ("face-marked value", checks.bx_value),
                    ("derivative amplitude", checks.bz_amplitude),
                    ("cut-incidence amplitude", checks.ea_amplitude),
                    ("calibration", checks.calibration),
                ] {
                    println!(
                        "  {:<24} estimate {:>14.9} target {:>14.9} rel {:9.2e}",
                        name, c.estimate, c.target, c.rel_error
                    );
                }
            }
            if report.all_pass {
                Ok(())
            } else {
                Err(HarnessError::OracleFailure(
                    "constants outside tolerance".into(),
                ))
            }
        }
        Command::Gw {
            class,
            n,
            samples,
            seed,
            threads,
            format,
            out,
            bins,
        } => {
            let class = MapClass::from_name(&class)
                .ok_or_else(|| HarnessError::Config(format!("unknown class {class}")))?;
            let cfg = RunConfig {
                n,
                samples,
                seed,
                threads,
                class,
                format,
                out,
                bins,
            };
            let report = cmd_gw(&cfg)?;
            println!("{}", report.to_json());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use csorgo_loops::bundled;
use csorgo_loops::formats::write_cocycle;
use csorgo_loops::pipeline::{self, RunReport};

#[derive(Parser)]
#[command(name = "csorgo", about = "Build and verify loops from cocycle setups on pc groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(clap::Args)]
struct Inputs {
    /// Presentation file, or `bundled:<name>` for a shipped one.
    #[arg(long)]
    pc: String,
    /// Frame file or inline frame; defaults to the bundled frame.
    #[arg(long)]
    frame: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Construct δ, μ and the loop, and run every verifier.
    Build {
        #[command(flatten)]
        inputs: Inputs,
        /// Parameter overrides (`delta`, `tau`, `psi`, `phi` lines).
        #[arg(long)]
        params: Option<PathBuf>,
        /// Directory for delta.txt, mu.txt, loop.txt and the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verifiers on a δ or μ table.
    Verify {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, conflicts_with = "mu", required_unless_present = "mu")]
        delta: Option<PathBuf>,
        #[arg(long)]
        mu: Option<PathBuf>,
    },
    /// Build once per point of a parameter space (`vary` lines).
    Sweep {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 4096)]
        budget: usize,
    },
    /// Write the loop's Cayley table (1-based) to a file or stdout.
    Export {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

impl Inputs {
    fn load(&self) -> Result<(String, String), String> {
        let (pc, default_frame) = match self.pc.strip_prefix("bundled:") {
            Some(name) => {
                let b = bundled::by_name(name).ok_or_else(|| format!("no bundled presentation named {name}"))?;
                (b.pc.to_string(), Some(b.frame.to_string()))
            }
            None => (read(Path::new(&self.pc))?, None),
        };
        let frame = match &self.frame {
            Some(f) if Path::new(f).is_file() => read(Path::new(f))?,
            Some(f) => f.clone(),
            None => default_frame.ok_or("--frame is required for presentation files")?,
        };
        Ok((pc, frame))
    }
}

fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Text => report.to_text(true),
        Format::Kv => report.to_kv(true),
    }
}

fn write_out(dir: &Path, name: &str, contents: &str) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Build { inputs, params, out } => {
            let (pc, frame) = inputs.load()?;
            let params = params.as_deref().map(read).transpose()?;
            let (report, artifacts) = pipeline::build(&pc, &frame, params.as_deref());
            let text = render(&report, inputs.format);
            print!("{text}");
            if let Some(dir) = out {
                if let Some(a) = &artifacts {
                    write_out(&dir, "delta.txt", &write_cocycle(&a.delta))?;
                    write_out(&dir, "mu.txt", &write_cocycle(&a.mu))?;
                    write_out(&dir, "loop.txt", &a.loop_table.to_text())?;
                }
                let name = match inputs.format {
                    Format::Text => "report.txt",
                    Format::Kv => "report.kv",
                };
                write_out(&dir, name, &text)?;
            }
            Ok(report.passed())
        }
        Command::Verify { inputs, delta, mu } => {
            let (pc, frame) = inputs.load()?;
            let report = match (delta, mu) {
                (Some(d), _) => pipeline::verify_delta(&pc, &frame, &read(&d)?),
                (None, Some(m)) => pipeline::verify_mu(&pc, &frame, &read(&m)?),
                (None, None) => unreachable!("clap requires one table"),
            };
            print!("{}", render(&report, inputs.format));
            Ok(report.passed())
        }
        Command::Sweep { inputs, params, out, jobs, budget } => {
            let (pc, frame) = inputs.load()?;
            let summary = pipeline::sweep(&pc, &frame, &read(&params)?, jobs, budget).map_err(|e| e.to_string())?;
            let text = summary.to_text();
            print!("{text}");
            if let Some(dir) = out {
                write_out(&dir, "summary.txt", &text)?;
            }
            Ok(summary.all_passed())
        }
        Command::Export { inputs, params, out } => {
            let (pc, frame) = inputs.load()?;
            let params = params.as_deref().map(read).transpose()?;
            let (report, artifacts) = pipeline::build(&pc, &frame, params.as_deref());
            let Some(a) = artifacts else {
                eprint!("{}", render(&report, inputs.format));
                return Ok(false);
            };
            let table = a.loop_table.to_text();
            match out {
                Some(path) => fs::write(&path, table).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{table}"),
            }
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

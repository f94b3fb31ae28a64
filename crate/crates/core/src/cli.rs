//! Command-line front end. The binary only forwards to [`run`].
//!
//! Exit codes: 0 success, 1 validation error, 2 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::Config;
use crate::dataset::{parse_dataset, serialize_dataset, write_atomic};
use crate::maps::{cells_csv, export_trajectory, parse_trajectory_csv, render_sensor_map, trajectory_csv, ExportFormat};
use crate::pipeline;
use crate::sim;

#[derive(Debug, Parser)]
#[command(name = "schlingel", about = "Four-vector strapdown trajectories from IMU logs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate an IMU dataset into a trajectory CSV.
    Integrate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output path, or `-` for standard output.
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a synthetic dataset from a motion profile.
    Simulate {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the analytic trajectory.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Render a sensor map (PPM) from a trajectory CSV.
    Map {
        #[arg(long)]
        trajectory: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Also write per-cell statistics.
        #[arg(long)]
        cells: Option<PathBuf>,
    },
    /// Convert a trajectory CSV to PLY or CSV.
    Export {
        #[arg(long)]
        trajectory: PathBuf,
        #[arg(long, default_value = "ply")]
        format: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the version.
    Version,
}

#[derive(Debug)]
enum Failure {
    Validation(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Io(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Io(m) => m,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Validation(e.to_string())
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    String::from_utf8(read(path)?).map_err(|_| Failure::Validation(format!("{} is not valid UTF-8", path.display())))
}

fn load_config(path: Option<&Path>) -> Result<Config, Failure> {
    match path {
        Some(p) => read_text(p)?
            .parse()
            .map_err(|e| Failure::Validation(format!("{}: {e}", p.display()))),
        None => Ok(Config::default()),
    }
}

fn write(path: &Path, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), Failure> {
    if path.as_os_str() == "-" {
        return stdout
            .write_all(bytes)
            .and_then(|_| stdout.flush())
            .map_err(|e| Failure::Io(format!("cannot write to standard output: {e}")));
    }
    write_atomic(path, bytes).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Integrate { input, config, out } => {
            let cfg = load_config(config.as_deref())?;
            let samples = parse_dataset(&read(&input)?).map_err(|e| Failure::Validation(format!("{}: {e}", input.display())))?;
            let points = pipeline::run(&samples, &cfg.pipeline).map_err(invalid)?;
            write(&out, trajectory_csv(&points).map_err(invalid)?.as_bytes(), stdout)
        }
        Command::Simulate { profile, out, truth } => {
            let cfg = load_config(Some(&profile))?;
            let motion = cfg
                .profile
                .ok_or_else(|| Failure::Validation(format!("{}: missing `profile` key", profile.display())))?;
            match truth {
                Some(truth_path) => {
                    let (samples, points) = sim::generate(&motion, &cfg.pipeline.relativity).map_err(invalid)?;
                    write(&out, serialize_dataset(&samples).as_bytes(), stdout)?;
                    write(&truth_path, trajectory_csv(&points).map_err(invalid)?.as_bytes(), stdout)
                }
                None => {
                    let samples = sim::generate_samples(&motion).map_err(invalid)?;
                    write(&out, serialize_dataset(&samples).as_bytes(), stdout)
                }
            }
        }
        Command::Map {
            trajectory,
            config,
            out,
            cells,
        } => {
            let cfg = load_config(config.as_deref())?;
            let points = parse_trajectory_csv(&read_text(&trajectory)?)
                .map_err(|e| Failure::Validation(format!("{}: {e}", trajectory.display())))?;
            let (grid, ppm) = render_sensor_map(&points, &cfg.grid, &cfg.ramp).map_err(invalid)?;
            write(&out, &ppm, stdout)?;
            if let Some(path) = cells {
                write(&path, cells_csv(&grid).as_bytes(), stdout)?;
            }
            Ok(())
        }
        Command::Export {
            trajectory,
            format,
            config,
            out,
        } => {
            let format: ExportFormat = format.parse().map_err(invalid)?;
            let cfg = load_config(config.as_deref())?;
            let points = parse_trajectory_csv(&read_text(&trajectory)?)
                .map_err(|e| Failure::Validation(format!("{}: {e}", trajectory.display())))?;
            let bytes = export_trajectory(&points, format, cfg.arrow_scale).map_err(invalid)?;
            write(&out, &bytes, stdout)
        }
        Command::Version => {
            let line = format!("schlingel {}\n", env!("CARGO_PKG_VERSION"));
            write(Path::new("-"), line.as_bytes(), stdout)
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

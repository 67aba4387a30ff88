//! `tribody`: evaluate and scan three-body decay spin entanglement.
//!
//! Exit status is 0 on success, 1 on domain errors (bad angles or couplings,
//! vanishing amplitudes) and 2 on I/O errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tribody::decay::{CouplingSet, DecayConfiguration, Interaction, RotationAxis};
use tribody::scan::{self, OutputFormat, ScanMode, ScanRequest, DEFAULT_GRID, DEFAULT_SAMPLES};

#[derive(Parser)]
#[command(name = "tribody", version, about = "Spin entanglement of the final state in fermion three-body decays")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every measure at one phase-space point and spin direction.
    Point {
        #[command(flatten)]
        common: Common,
        /// Opening angle between particles 1 and 2.
        #[arg(long, value_parser = angle, allow_hyphen_values = true)]
        theta2: f64,
        /// Opening angle between particles 1 and 3.
        #[arg(long, value_parser = angle, allow_hyphen_values = true)]
        theta3: f64,
        /// Polar angle of the parent spin.
        #[arg(long, value_parser = angle, allow_hyphen_values = true)]
        spin_theta: f64,
        /// Azimuth of the parent spin, in [0, 2pi).
        #[arg(long, value_parser = angle, allow_hyphen_values = true)]
        spin_phi: f64,
    },
    /// Scan the (theta2, theta3) plane at a fixed parent spin direction.
    ScanPlane {
        #[command(flatten)]
        common: Common,
        /// Polar angle of the parent spin (default: perpendicular to the decay plane, +y).
        #[arg(long, value_parser = angle, default_value = "pi/2", allow_hyphen_values = true)]
        spin_theta: f64,
        /// Azimuth of the parent spin (default: +y). Use pi/4 with
        /// --spin-theta pi/4 for the tilted configuration.
        #[arg(long, value_parser = angle, default_value = "pi/2", allow_hyphen_values = true)]
        spin_phi: f64,
        /// Grid nodes per axis over [0, pi].
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Rotate the parent spin away from +z about the x or y axis.
    ScanSpin {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = angle, allow_hyphen_values = true)]
        theta2: f64,
        #[arg(long, value_parser = angle, allow_hyphen_values = true)]
        theta3: f64,
        /// Rotation axis (right-handed).
        #[arg(long, value_enum)]
        spin_axis: AxisArg,
        /// Rotation angles sampled uniformly on [0, 2pi).
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
}

#[derive(Args)]
struct Common {
    /// Mediator type.
    #[arg(long, value_enum)]
    interaction: InteractionArg,
    /// Four real couplings g1,g2,g3,g4: (c_S,c_A,d_S,d_A), (c_L,c_R,d_L,d_R)
    /// or (c_M,c_E,d_M,d_E). Defaults to all 1/sqrt2.
    #[arg(long, value_parser = couplings, allow_hyphen_values = true)]
    couplings: Option<[f64; 4]>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum InteractionArg {
    Scalar,
    Vector,
    Tensor,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    X,
    Y,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn angle(s: &str) -> Result<f64, String> {
    scan::parse_angle(s).map_err(|e| e.to_string())
}

fn couplings(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected four comma-separated couplings, got {}", parts.len()));
    }
    let mut out = [0.0; 4];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
    }
    Ok(out)
}

impl Common {
    fn coupling_set(&self) -> tribody::Result<CouplingSet> {
        let kind = match self.interaction {
            InteractionArg::Scalar => Interaction::Scalar,
            InteractionArg::Vector => Interaction::Vector,
            InteractionArg::Tensor => Interaction::Tensor,
        };
        match self.couplings {
            Some(g) => CouplingSet::new(kind, g),
            None => Ok(CouplingSet::uniform(kind)),
        }
    }

    fn format(&self) -> OutputFormat {
        match self.format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

fn run(cli: Cli) -> tribody::Result<()> {
    let (common, mode) = match cli.command {
        Command::Point {
            common,
            theta2,
            theta3,
            spin_theta,
            spin_phi,
        } => {
            let cfg = DecayConfiguration::new(theta2, theta3, spin_theta, spin_phi)?;
            (common, ScanMode::Point(cfg))
        }
        Command::ScanPlane {
            common,
            spin_theta,
            spin_phi,
            grid,
        } => (
            common,
            ScanMode::Plane {
                grid,
                spin_theta,
                spin_phi,
            },
        ),
        Command::ScanSpin {
            common,
            theta2,
            theta3,
            spin_axis,
            samples,
        } => {
            let axis = match spin_axis {
                AxisArg::X => RotationAxis::X,
                AxisArg::Y => RotationAxis::Y,
            };
            (
                common,
                ScanMode::Spin {
                    theta2,
                    theta3,
                    axis,
                    samples,
                },
            )
        }
    };
    let request = ScanRequest {
        couplings: common.coupling_set()?,
        mode,
    };
    let rows = request.run()?;

    match &common.output {
        Some(path) => {
            let file = File::create(path)?;
            scan::serialize(&rows, common.format(), BufWriter::new(file))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            scan::serialize(&rows, common.format(), &mut lock)?;
            lock.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { 2 } else { 1 })
        }
    }
}

//! `borealis`: scenario-driven coverage, revisit, link-budget and TLE
//! experiments for single-shell Walker constellations. All behavior lives
//! in the library; this file only parses arguments and maps errors to exit
//! codes (0 success, 2 validation, 3 I/O).

use std::path::PathBuf;
use std::process::ExitCode;

use borealis_cli::commands::{self, MapArgs, SweepArgs};
use borealis_cli::scenario::{parse_range, parse_region, Overrides};
use borealis_cli::CliError;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "borealis",
    version,
    about = "Deterministic LEO constellation coverage simulator",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario file; flags override the matching file fields
    Run {
        /// Path to a scenario TOML document
        scenario: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        duration_s: Option<u64>,
        #[arg(long)]
        step_s: Option<u64>,
        /// Enable or disable nodal drift, e.g. --j2 true
        #[arg(long)]
        j2: Option<bool>,
        #[arg(long)]
        mask_deg: Option<f64>,
        /// Latitude override for sweep scenarios, start:stop:step
        #[arg(long)]
        lats: Option<String>,
        /// Region override for map scenarios, lat_min:lat_max:lon_min:lon_max
        #[arg(long)]
        region: Option<String>,
        #[arg(long)]
        resolution_deg: Option<f64>,
    },
    /// Latitude sweep without a scenario file
    Sweep {
        /// Swept parameter: elevation or inclination
        #[arg(long)]
        param: String,
        /// Parameter range, start:stop:step (inclusive)
        #[arg(long)]
        range: String,
        /// Shell spec, pattern:inclination:T/P/F (e.g. delta:75:64/8/3)
        #[arg(long)]
        shell: String,
        /// Shell altitude, km
        #[arg(long)]
        alt: f64,
        /// Elevation mask for inclination sweeps, degrees
        #[arg(long)]
        mask: Option<f64>,
        /// Latitude range, start:stop:step (default 50:90:5)
        #[arg(long)]
        lats: Option<String>,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        #[arg(long)]
        duration_s: Option<u64>,
        #[arg(long)]
        step_s: Option<u64>,
        #[arg(long)]
        j2: bool,
    },
    /// Coverage map over a latitude/longitude region
    Map {
        /// Shell spec, pattern:inclination:T/P/F
        #[arg(long)]
        shell: String,
        /// Shell altitude, km
        #[arg(long)]
        alt: f64,
        /// Elevation mask, degrees
        #[arg(long)]
        mask: f64,
        /// Region bounds, lat_min:lat_max:lon_min:lon_max
        #[arg(long)]
        region: String,
        #[arg(long, default_value_t = 1.0)]
        resolution_deg: f64,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        #[arg(long)]
        duration_s: Option<u64>,
        #[arg(long)]
        step_s: Option<u64>,
        #[arg(long)]
        j2: bool,
    },
    /// Export a shell as three-line element sets
    Tle {
        /// Shell spec, pattern:inclination:T/P/F
        #[arg(long)]
        shell: String,
        /// Shell altitude, km
        #[arg(long)]
        alt: f64,
        /// Output file
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate one link budget and print it as text plus a CSV row
    Linkbudget {
        /// Carrier frequency, Hz
        #[arg(long)]
        freq: f64,
        /// Satellite altitude, km
        #[arg(long)]
        alt: f64,
        /// Elevation angle, degrees
        #[arg(long)]
        elev: f64,
        /// CSV attenuation table to use instead of the built-in one
        #[arg(long)]
        atmos_table: Option<PathBuf>,
        /// Also report LoS probability: dense_urban, urban or suburban_rural
        #[arg(long)]
        env: Option<String>,
    },
    /// List or show the built-in scenarios
    Presets {
        #[command(subcommand)]
        action: PresetsCommand,
    },
}

#[derive(Subcommand)]
enum PresetsCommand {
    /// One line per preset: name and summary
    List,
    /// Print a preset's scenario TOML to stdout
    Show { name: String },
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run {
            scenario,
            out_dir,
            duration_s,
            step_s,
            j2,
            mask_deg,
            lats,
            region,
            resolution_deg,
        } => {
            let overrides = Overrides {
                out_dir,
                duration_s,
                step_s,
                j2_enabled: j2,
                mask_deg,
                lats: lats.as_deref().map(parse_range).transpose()?,
                region: region.as_deref().map(parse_region).transpose()?,
                resolution_deg,
            };
            commands::cmd_run(&scenario, &overrides)
        }
        Command::Sweep {
            param,
            range,
            shell,
            alt,
            mask,
            lats,
            out_dir,
            duration_s,
            step_s,
            j2,
        } => commands::cmd_sweep(&SweepArgs {
            param,
            range,
            shell,
            alt,
            mask,
            lats,
            out_dir,
            duration_s,
            step_s,
            j2,
        }),
        Command::Map {
            shell,
            alt,
            mask,
            region,
            resolution_deg,
            out_dir,
            duration_s,
            step_s,
            j2,
        } => commands::cmd_map(&MapArgs {
            shell,
            alt,
            mask,
            region,
            resolution_deg,
            out_dir,
            duration_s,
            step_s,
            j2,
        }),
        Command::Tle { shell, alt, out } => commands::cmd_tle(&shell, alt, &out),
        Command::Linkbudget { freq, alt, elev, atmos_table, env } => {
            commands::cmd_linkbudget(freq, alt, elev, atmos_table.as_deref(), env.as_deref())
        }
        Command::Presets { action } => match action {
            PresetsCommand::List => {
                commands::cmd_presets_list();
                Ok(())
            }
            PresetsCommand::Show { name } => commands::cmd_presets_show(&name),
        },
    }
}

/// Restore the default SIGPIPE disposition, which Rust overrides at
/// startup: piping into `head` should end the process quietly, not
/// panic on the first write to the closed pipe.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code() as u8)
        }
    }
}

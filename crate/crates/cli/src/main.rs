//! `rydberg-ions`: trap, crystal, dressing, transfer and gate calculations
//! for trapped Rydberg ions, with JSON on stdout and optional CSV/JSON
//! artifacts in `--out-dir`.

mod commands;
mod config;
mod error;
mod output;

use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rydberg_ions::spinchain::PairConvention;

use crate::config::{
    set, CrystalDoc, DressDoc, FrequencyConvention, GateDoc, LaserDoc, TransferDoc, TrapDoc,
};
use crate::error::CliError;
use crate::output::{to_json, Artifacts};

/// Exit status of `reproduce` when a check misses its tolerance.
const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "rydberg-ions",
    version,
    about = "Trapped Rydberg ion simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON parameter document; flags override its values.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Directory for CSV and JSON artifacts.
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Secular frequencies, ionization threshold and Rydberg trap effects.
    Trap {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        species: Option<String>,
        /// TOML species document.
        #[arg(long, value_name = "FILE")]
        species_file: Option<String>,
        /// RF gradient (V/m^2).
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        /// Static gradient (V/m^2).
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        /// RF drive frequency (MHz, ordinary).
        #[arg(
            long = "omega-rf-mhz",
            alias = "rf-frequency-mhz",
            allow_hyphen_values = true
        )]
        rf_mhz: Option<f64>,
        /// Principal quantum number.
        #[arg(long)]
        n: Option<u32>,
        /// Ion spacing for the van der Waals estimate (um).
        #[arg(long, allow_hyphen_values = true)]
        spacing_um: Option<f64>,
    },
    /// Equilibrium positions and normal modes of a linear chain.
    Crystal {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n_ions: Option<usize>,
        #[arg(long)]
        species: Option<String>,
        #[arg(long, value_name = "FILE")]
        species_file: Option<String>,
        /// Axial trap frequency (MHz, ordinary).
        #[arg(long, allow_hyphen_values = true)]
        axial_mhz: Option<f64>,
        /// Radial trap frequency (MHz, ordinary).
        #[arg(long, allow_hyphen_values = true)]
        radial_mhz: Option<f64>,
    },
    /// MW dressing of the Rydberg manifold and optional laser dressing of the ground states.
    Dress {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        flags: DressFlags,
    },
    /// Excitation transfer along a chain of MW-dressed Rydberg ions.
    Transfer {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n_ions: Option<usize>,
        /// Gradient detuning scale in units of |J|.
        #[arg(long, allow_hyphen_values = true)]
        bz: Option<f64>,
        /// MW Rabi frequency in units of |J|.
        #[arg(long, allow_hyphen_values = true)]
        omega2: Option<f64>,
        /// Scan window (hbar/|J|).
        #[arg(long, allow_hyphen_values = true)]
        t_max: Option<f64>,
        /// Sampling step (hbar/|J|).
        #[arg(long, allow_hyphen_values = true)]
        dt: Option<f64>,
        #[arg(long, value_enum)]
        convention: Option<ConventionArg>,
        /// Sign of the dipolar coupling (+1 or -1).
        #[arg(long, allow_hyphen_values = true)]
        coupling_sign: Option<f64>,
        /// Start with ion 1 down and the rest up.
        #[arg(long)]
        invert_initial: bool,
    },
    /// Conditional phase of the two-ion microwave gate.
    Gate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        flags: GateFlags,
    },
    /// Rerun a reference calculation and check it against its target values.
    Reproduce {
        #[command(flatten)]
        common: Common,
        #[arg(value_enum)]
        target: Target,
    },
}

#[derive(Args)]
struct DressFlags {
    /// Treat frequency values as angular instead of ordinary.
    #[arg(long)]
    angular: bool,
    #[arg(long, allow_hyphen_values = true)]
    omega1_mhz: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    omega2_mhz: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta1_mhz: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta2_mhz: Option<f64>,
    /// <n,s|r|n',p> in units of a0.
    #[arg(long, allow_hyphen_values = true)]
    d1_ea0: Option<f64>,
    /// <n,s|r|n,p> in units of a0.
    #[arg(long, allow_hyphen_values = true)]
    d2_ea0: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "omega_p_mhz")]
    omega_s_mhz: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "omega_s_mhz")]
    omega_p_mhz: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta_s_mhz: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta_p_mhz: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lifetime_us: Option<f64>,
}

#[derive(Args)]
struct GateFlags {
    #[arg(long)]
    angular: bool,
    #[arg(long)]
    n_ions: Option<usize>,
    /// 1-based chain positions of the two ions.
    #[arg(long, num_args = 2, value_names = ["M", "N"])]
    ions: Option<Vec<usize>>,
    #[arg(long, allow_hyphen_values = true)]
    omega2_mhz: Option<f64>,
    #[arg(long, num_args = 2, allow_hyphen_values = true, value_names = ["D1", "D2"])]
    delta2_mhz: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true)]
    coupling_mhz: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    duration_us: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    peak_rabi_mhz: Option<f64>,
    #[arg(long, value_enum)]
    envelope: Option<EnvelopeArg>,
    #[arg(long, allow_hyphen_values = true)]
    detuning_mhz: Option<f64>,
    #[arg(long, num_args = 2, allow_hyphen_values = true, value_names = ["START", "END"])]
    detuning_ramp_mhz: Option<Vec<f64>>,
    #[arg(long)]
    tracking_steps: Option<usize>,
    #[arg(long)]
    tdse_steps: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Ordered,
    Distinct,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnvelopeArg {
    SinSquared,
    Constant,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    /// Chain transfer efficiency and time.
    Fig5,
    /// Trap frequencies, ionization threshold and Rydberg shifts.
    Trapfreqs,
}

fn pair(v: Option<Vec<f64>>) -> Option<[f64; 2]> {
    v.map(|v| [v[0], v[1]])
}

fn print(value: &serde_json::Value) -> Result<(), CliError> {
    let text = to_json(value)?;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(CliError::Io(e.to_string())),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Trap {
            common,
            species,
            species_file,
            alpha,
            beta,
            rf_mhz,
            n,
            spacing_um,
        } => {
            let mut doc: TrapDoc = config::load(common.config.as_deref())?;
            set(&mut doc.species, species);
            set(&mut doc.species_file, species_file);
            set(&mut doc.alpha, alpha);
            set(&mut doc.beta, beta);
            set(&mut doc.rf_mhz, rf_mhz);
            set(&mut doc.n, n);
            set(&mut doc.spacing_um, spacing_um);
            let doc = doc.resolved()?;
            let out = Artifacts::new(common.out_dir)?;
            let report = commands::trap(&doc)?;
            out.write_json("trap.json", &report)?;
            print(&report)?;
        }
        Command::Crystal {
            common,
            n_ions,
            species,
            species_file,
            axial_mhz,
            radial_mhz,
        } => {
            let mut doc: CrystalDoc = config::load(common.config.as_deref())?;
            set(&mut doc.n_ions, n_ions);
            set(&mut doc.species, species);
            set(&mut doc.species_file, species_file);
            set(&mut doc.axial_mhz, axial_mhz);
            set(&mut doc.radial_mhz, radial_mhz);
            let doc = commands::crystal_defaults(doc)?;
            let out = Artifacts::new(common.out_dir)?;
            print(&commands::crystal(&doc, &out)?)?;
        }
        Command::Dress { common, flags } => {
            let mut doc: DressDoc = config::load(common.config.as_deref())?;
            if flags.angular {
                doc.frequency_convention = Some(FrequencyConvention::Angular);
            }
            set(&mut doc.omega1, flags.omega1_mhz);
            set(&mut doc.omega2, flags.omega2_mhz);
            set(&mut doc.delta1, flags.delta1_mhz);
            set(&mut doc.delta2, flags.delta2_mhz);
            set(&mut doc.d1, flags.d1_ea0);
            set(&mut doc.d2, flags.d2_ea0);
            if let (Some(omega_s), Some(omega_p)) = (flags.omega_s_mhz, flags.omega_p_mhz) {
                let laser = doc.laser.get_or_insert_with(LaserDoc::default);
                laser.omega_s = omega_s;
                laser.omega_p = omega_p;
            }
            if let Some(laser) = &mut doc.laser {
                set(&mut laser.delta_s, flags.delta_s_mhz);
                set(&mut laser.delta_p, flags.delta_p_mhz);
            } else if flags.delta_s_mhz.is_some() || flags.delta_p_mhz.is_some() {
                return Err(CliError::Validation(
                    "laser detunings need --omega-s-mhz and --omega-p-mhz".into(),
                ));
            }
            set(&mut doc.lifetime_us, flags.lifetime_us);
            let doc = doc.resolved()?;
            let out = Artifacts::new(common.out_dir)?;
            print(&commands::dress(&doc, &out)?)?;
        }
        Command::Transfer {
            common,
            n_ions,
            bz,
            omega2,
            t_max,
            dt,
            convention,
            coupling_sign,
            invert_initial,
        } => {
            let mut doc: TransferDoc = config::load(common.config.as_deref())?;
            set(&mut doc.n_ions, n_ions);
            set(&mut doc.bz, bz);
            set(&mut doc.omega2, omega2);
            set(&mut doc.t_max, t_max);
            set(&mut doc.dt, dt);
            set(
                &mut doc.pair_convention,
                convention.map(|c| match c {
                    ConventionArg::Ordered => PairConvention::Ordered,
                    ConventionArg::Distinct => PairConvention::Distinct,
                }),
            );
            set(&mut doc.coupling_sign, coupling_sign);
            if invert_initial {
                doc.invert_initial = Some(true);
            }
            let doc = doc.resolved()?;
            let out = Artifacts::new(common.out_dir)?;
            print(&commands::transfer(&doc, &out)?.0)?;
        }
        Command::Gate { common, flags } => {
            let mut doc: GateDoc = config::load(common.config.as_deref())?;
            if flags.angular {
                doc.frequency_convention = Some(FrequencyConvention::Angular);
            }
            set(&mut doc.n_ions, flags.n_ions);
            set(&mut doc.ions, flags.ions.map(|v| [v[0], v[1]]));
            set(&mut doc.omega2, flags.omega2_mhz);
            set(&mut doc.delta2, pair(flags.delta2_mhz));
            set(&mut doc.coupling, flags.coupling_mhz);
            set(&mut doc.duration_us, flags.duration_us);
            set(&mut doc.peak_rabi, flags.peak_rabi_mhz);
            set(
                &mut doc.envelope,
                flags.envelope.map(|e| match e {
                    EnvelopeArg::SinSquared => config::EnvelopeName::SinSquared,
                    EnvelopeArg::Constant => config::EnvelopeName::Constant,
                }),
            );
            set(&mut doc.detuning, flags.detuning_mhz);
            set(&mut doc.detuning_ramp, pair(flags.detuning_ramp_mhz));
            set(&mut doc.tracking_steps, flags.tracking_steps);
            set(&mut doc.tdse_steps, flags.tdse_steps);
            let doc = doc.resolved()?;
            let out = Artifacts::new(common.out_dir)?;
            print(&commands::gate(&doc, &out)?.0)?;
        }
        Command::Reproduce { common, target } => {
            if common.config.is_some() {
                return Err(CliError::Validation(
                    "reproduce runs fixed reference parameters; --config is not accepted".into(),
                ));
            }
            let out = Artifacts::new(common.out_dir)?;
            let (label, checks) = match target {
                Target::Fig5 => ("fig5", commands::reproduce_fig5(&out)?),
                Target::Trapfreqs => ("trapfreqs", commands::reproduce_trapfreqs(&out)?),
            };
            let mut failed = 0;
            for c in &checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                failed += usize::from(!c.pass);
                println!("{status} {label} {}: {}", c.name, c.detail);
            }
            if failed > 0 {
                return Ok(EXIT_CHECK_FAILED);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let err = CliError::Validation(e.kind().to_string());
            println!("{}", err.to_json());
            return ExitCode::from(err.exit_code());
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            println!("{}", e.to_json());
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

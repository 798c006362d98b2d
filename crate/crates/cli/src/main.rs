use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use diracwalk::WalkParams;
use diracwalk_cli::config::{self, Config};
use diracwalk_cli::run::{
    run_amplitudes, run_circuit, run_simulate, run_sweep, run_verify, DEFAULT_PROFILE_DTS,
};
use diracwalk_cli::CliError;

#[derive(Parser)]
#[command(name = "diracwalk", version, about = "Quantum-walk simulation of 1D lattice Dirac dynamics")]
struct Cli {
    /// Directory for relative output paths.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    /// Reserved; the engine is deterministic and ignores it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one walk and write series (and optionally spacetime) CSVs.
    Simulate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a parameter sweep and write the aggregate table.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Tabulate hopping amplitudes of the fractional translation operator.
    Amplitudes {
        #[arg(long, default_value_t = 64)]
        n_sites: usize,
        /// Time intervals; repeat the flag for several rows.
        #[arg(long = "dt")]
        dts: Vec<f64>,
    },
    /// Export the one-step circuit as OpenQASM 2.0 and write the depth table.
    Circuit {
        #[arg(long, default_value_t = 16)]
        n_sites: usize,
        #[arg(long, default_value_t = 1.0)]
        dt: f64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
        mass: f64,
    },
    /// Run the built-in invariant and oracle checks.
    Verify,
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let out_dir = &cli.out_dir;
    match &cli.command {
        Command::Simulate { config } => {
            let Config::Simulate(cfg) = config::load(config)? else {
                return Err(CliError::config("mode", "expected \"simulate\""));
            };
            let out = run_simulate(&cfg, out_dir)?;
            println!("wrote {}", out.series_path.display());
            if let Some(p) = out.spacetime_path {
                println!("wrote {}", p.display());
            }
        }
        Command::Sweep { config } => {
            let Config::Sweep(cfg) = config::load(config)? else {
                return Err(CliError::config("mode", "expected \"sweep\""));
            };
            let (path, rows) = run_sweep(&cfg, out_dir)?;
            println!("wrote {} ({} runs)", path.display(), rows.len());
        }
        Command::Amplitudes { n_sites, dts } => {
            let dts = if dts.is_empty() { DEFAULT_PROFILE_DTS.to_vec() } else { dts.clone() };
            let (path, _) = run_amplitudes(&dts, *n_sites, out_dir)?;
            println!("wrote {}", path.display());
        }
        Command::Circuit { n_sites, dt, mass } => {
            let params = WalkParams::new(*n_sites, *dt, *mass, 0)
                .map_err(|e| CliError::config("circuit", e.to_string()))?;
            let out = run_circuit(&params, out_dir)?;
            println!(
                "wrote {} (depth {}, {} one-qubit, {} two-qubit gates)",
                out.qasm_path.display(),
                out.metrics.depth,
                out.metrics.one_qubit,
                out.metrics.two_qubit
            );
            println!("wrote {}", out.depth_path.display());
        }
        Command::Verify => {
            let (results, outcome) = match run_verify() {
                Ok(r) => (r, Ok(())),
                Err((r, e)) => (r, Err(e)),
            };
            for r in &results {
                println!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
            }
            outcome?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fockwave::engine::Core;
use fockwave::error::Error;
use fockwave::scenario::{self, builtin, Format, Scenario};

#[derive(Parser)]
#[command(
    name = "fockwave",
    version,
    about = "Linear-optical circuit simulation with partially distinguishable photons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Run a built-in scenario: hom, hom3, delay_mz, swap, swap_partial.
    Builtin {
        name: String,
        #[command(flatten)]
        opts: Opts,
        /// Print the scenario file instead of running it.
        #[arg(long)]
        print_scenario: bool,
    },
}

#[derive(clap::Args)]
struct Opts {
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the scenario's core.
    #[arg(long, value_enum)]
    core: Option<CoreArg>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Accepted for compatibility; simulations are deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoreArg {
    Direct,
    Permanent,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

enum Failure {
    Input(Error),
    Simulation(Error),
}

fn emit(bytes: &[u8], out: Option<&Path>) -> Result<(), Failure> {
    use std::io::Write;
    match out {
        Some(p) => {
            std::fs::write(p, bytes).map_err(|e| Failure::Input(Error::Scenario(format!("{}: {e}", p.display()))))
        }
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Simulation(Error::Scenario(e.to_string()))),
    }
}

fn execute(s: &Scenario, opts: &Opts) -> Result<(), Failure> {
    let core = opts.core.map(|c| match c {
        CoreArg::Direct => Core::Direct,
        CoreArg::Permanent => Core::Permanent,
    });
    let format = match opts.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let points = s.run(core).map_err(Failure::Simulation)?;
    let mut buf = Vec::new();
    scenario::write(s, &points, format, &mut buf).map_err(Failure::Simulation)?;
    emit(&buf, opts.out.as_deref())
}

fn main_inner(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Run { file, opts } => {
            let s = Scenario::load(&file).map_err(Failure::Input)?;
            execute(&s, &opts)
        }
        Command::Builtin {
            name,
            opts,
            print_scenario,
        } => {
            let s = builtin::builtin(&name).map_err(Failure::Input)?;
            if print_scenario {
                let text = s.to_toml().map_err(Failure::Simulation)?;
                return emit(text.as_bytes(), opts.out.as_deref());
            }
            execute(&s, &opts)
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Simulation(e)) => {
            eprintln!("simulation failed: {e}");
            ExitCode::from(1)
        }
    }
}

//! Loads a scenario file, runs its sweep and prints the results as CSV.
//!
//! Usage: cargo run --example scenario_file [path/to/scenario.toml]

use std::path::PathBuf;

use fockwave::scenario::{write, Format, Scenario};

fn main() -> fockwave::error::Result<()> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/mach_zehnder.toml"));
    let scenario = Scenario::load(&path)?;
    println!("# {}: {}", scenario.name, scenario.description);
    let points = scenario.run(None)?;
    write(&scenario, &points, Format::Csv, std::io::stdout().lock())
}

//! Command-line front end: verification suites, cohomology queries and
//! resolution summaries over lattice files or the compiled-in presets.
//!
//! Exit codes: 0 when every check passes, 1 when some check fails,
//! 2 on usage or input errors.

use clap::{Parser, Subcommand, ValueEnum};
use glattice::cohomology::{cohomology, is_coflasque};
use glattice::fileformat::{self, Compiled};
use glattice::groups::Subgroup;
use glattice::resolutions::coflasque_resolution;
use glattice::{ideles, klein, localfield};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "glattice", version, about = "G-lattice algebra and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Klein,
    Local,
    Global,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and report pass/fail per check.
    Verify {
        target: Target,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Tate cohomology of a named lattice from a file or preset.
    Cohom {
        /// Path to a lattice file, or a preset name (klein, local, global).
        #[arg(long)]
        file: String,
        #[arg(long)]
        lattice: String,
        /// "G", "1", or comma-separated element labels generating the subgroup.
        #[arg(long)]
        subgroup: String,
        /// Tate degree: -1, 0 or 1.
        #[arg(long, allow_hyphen_values = true)]
        degree: i32,
    },
    /// Coflasque resolution summary of a named lattice.
    Resolve {
        #[arg(long)]
        file: String,
        #[arg(long)]
        lattice: String,
    },
}

fn load(file: &str) -> Result<Compiled, String> {
    if let Some(doc) = fileformat::preset(file) {
        return fileformat::compile(&doc).map_err(|e| e.to_string());
    }
    let text = std::fs::read_to_string(file).map_err(|e| format!("cannot read {file}: {e}"))?;
    fileformat::parse(&text).map_err(|e| e.to_string())
}

fn parse_subgroup(compiled: &Compiled, spec: &str) -> Result<Subgroup, String> {
    let group = &compiled.group;
    match spec {
        "G" => Ok(group.full_subgroup()),
        "1" => Ok(group.trivial_subgroup()),
        _ => {
            let mut gens = Vec::new();
            for label in spec.split(',') {
                let label = label.trim();
                let idx = group
                    .element_by_label(label)
                    .ok_or_else(|| format!("unknown element label {label:?}"))?;
                gens.push(idx);
            }
            Ok(group.subgroup_generated_by(&gens))
        }
    }
}

fn run_verify(target: Target, format: Format) -> ExitCode {
    let report = match target {
        Target::Klein => klein::klein_suite(),
        Target::Local => localfield::local_suite(),
        Target::Global => ideles::global_suite(),
        Target::All => {
            let mut all = klein::klein_suite();
            all.merge(localfield::local_suite());
            all.merge(ideles::global_suite());
            all
        }
    };
    match format {
        Format::Text => println!("{report}"),
        Format::Json => println!("{}", report.to_json()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_cohom(file: &str, lattice: &str, subgroup: &str, degree: i32) -> Result<(), String> {
    if !matches!(degree, -1..=1) {
        return Err(format!("degree {degree} is not one of -1, 0, 1"));
    }
    let compiled = load(file)?;
    let m = compiled
        .lattices
        .get(lattice)
        .ok_or_else(|| format!("no lattice named {lattice:?}"))?;
    let h = parse_subgroup(&compiled, subgroup)?;
    println!("{}", cohomology(&h, m, degree));
    Ok(())
}

fn run_resolve(file: &str, lattice: &str) -> Result<(), String> {
    let compiled = load(file)?;
    let m = compiled
        .lattices
        .get(lattice)
        .ok_or_else(|| format!("no lattice named {lattice:?}"))?;
    // the preset ships the explicit resolution for Tstar; everything else
    // goes through the generic builder
    let resolution = if fileformat::preset(file).is_some() && lattice == "Tstar" {
        klein::build().map_err(|e| e.to_string())?.resolution
    } else {
        coflasque_resolution(&Arc::clone(m)).map_err(|e| e.to_string())?
    };
    let blocks: Vec<String> = resolution
        .blocks()
        .iter()
        .map(|(h, mult)| {
            if *mult == 1 {
                format!("Z[G/{}]", h.describe())
            } else {
                format!("Z[G/{}]^{}", h.describe(), mult)
            }
        })
        .collect();
    println!("resolution of {lattice}: 0 → F → P → {lattice} → 0");
    println!(
        "P rank {} = {}",
        resolution.permutation_term().rank(),
        blocks.join(" + ")
    );
    println!("F rank {}", resolution.kernel_term().rank());
    println!(
        "F coflasque: {}",
        is_coflasque(resolution.kernel_term()).holds()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { target, format } => run_verify(target, format),
        Command::Cohom {
            file,
            lattice,
            subgroup,
            degree,
        } => match run_cohom(&file, &lattice, &subgroup, degree) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Resolve { file, lattice } => match run_resolve(&file, &lattice) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lindflow::config::{load_config, Command as RunCommand};
use lindflow::runner::run;

/// Lindblad dynamics as gradient flow: steady states, spectra, trajectories,
/// and orthogonal Helmholtz-Hodge decompositions of finite-dimensional
/// open-system generators.
#[derive(Parser)]
#[command(name = "lindflow", version, about)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Run the model's invariant checks and report residuals.
    Validate(CommonArgs),
    /// Compute the steady-state Bloch vector and density matrix.
    SteadyState(CommonArgs),
    /// Compute the relaxation spectrum of the Bloch generator.
    Spectrum(CommonArgs),
    /// Solve the orthogonal Helmholtz-Hodge decomposition (P, p).
    Decompose(CommonArgs),
    /// Evolve the initial state over the configured time grid.
    Simulate(CommonArgs),
    /// Execute every command listed in the config file, in fixed order.
    Run(CommonArgs),
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Model configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory for report.json and per-command files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Override the residual tolerance used by validation and decomposition
    /// gates.
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, forced) = match &cli.command {
        CliCommand::Validate(a) => (a, Some(RunCommand::Validate)),
        CliCommand::SteadyState(a) => (a, Some(RunCommand::SteadyState)),
        CliCommand::Spectrum(a) => (a, Some(RunCommand::Spectrum)),
        CliCommand::Decompose(a) => (a, Some(RunCommand::Decompose)),
        CliCommand::Simulate(a) => (a, Some(RunCommand::Simulate)),
        CliCommand::Run(a) => (a, None),
    };
    let mut config = match load_config(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("lindflow: {e}");
            return ExitCode::FAILURE;
        }
    };
    if let Some(tol) = args.tol {
        if tol <= 0.0 {
            eprintln!("lindflow: --tol must be positive");
            return ExitCode::FAILURE;
        }
        config.tolerances.residual = tol;
    }
    if let Some(cmd) = forced {
        config.commands = vec![cmd];
    } else if config.commands.is_empty() {
        eprintln!("lindflow: config lists no commands; nothing to run");
        return ExitCode::FAILURE;
    }
    match run(&config, &args.out) {
        Ok(report) => {
            for name in &report.commands_run {
                let failed = report.failures.iter().any(|f| f.starts_with(name.as_str()));
                println!("{name}: {}", if failed { "FAIL" } else { "ok" });
            }
            if let Some(items) = &report.validation {
                for item in items {
                    println!(
                        "  {} {}: residual {:.3e} (tol {:.1e}){}",
                        if item.pass { "pass" } else { "FAIL" },
                        item.name,
                        item.residual,
                        item.tolerance,
                        item.note
                            .as_ref()
                            .map(|n| format!(" — {n}"))
                            .unwrap_or_default()
                    );
                }
            }
            for failure in &report.failures {
                eprintln!("lindflow: {failure}");
            }
            println!(
                "report written to {}",
                args.out.join("report.json").display()
            );
            if report.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("lindflow: {e}");
            ExitCode::FAILURE
        }
    }
}

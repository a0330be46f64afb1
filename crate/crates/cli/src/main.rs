use std::path::PathBuf;
use std::process::ExitCode;

use braidbox_cli::checks::CATALOGUE;
use braidbox_cli::{demo, parse_scenario, prepare, read_scenario, resolve_tolerance, Certificate, LoadError, Scenario, DEMOS, TOLERANCE_ENV};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "braidbox", version, about = "Verify braided finite quantum group scenarios and emit JSON certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of a scenario file
    Verify {
        scenario: PathBuf,
        #[command(flatten)]
        run: RunOptions,
    },
    /// List the available checks with their anchors and parameters
    ListChecks,
    /// Run a built-in scenario
    Demo {
        #[arg(value_parser = demo_names())]
        name: String,
        #[command(flatten)]
        run: RunOptions,
    },
}

#[derive(Args)]
struct RunOptions {
    /// Base tolerance; residuals are compared with base * dim
    #[arg(long)]
    tolerance: Option<f64>,
    /// Write the certificate here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for independent checks (default: one per core)
    #[arg(long)]
    jobs: Option<usize>,
    /// Record wall time per check (certificates are then not reproducible)
    #[arg(long)]
    timings: bool,
}

fn demo_names() -> clap::builder::PossibleValuesParser {
    clap::builder::PossibleValuesParser::new(DEMOS.iter().map(|(n, _)| *n))
}

fn input_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn execute(s: Scenario, opts: &RunOptions) -> ExitCode {
    let env = std::env::var(TOLERANCE_ENV).ok();
    let prepared = match resolve_tolerance(opts.tolerance, &s, env.as_deref()).and_then(|(t, src)| prepare(&s, t, src)) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let cert = pool.install(|| prepared.run(opts.timings));
    if let Err(code) = emit(&cert, opts) {
        return code;
    }
    if cert.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn emit(cert: &Certificate, opts: &RunOptions) -> Result<(), ExitCode> {
    let json = cert.to_json();
    match &opts.out {
        Some(path) => std::fs::write(path, json).map_err(|e| input_error(format!("{}: {e}", path.display())))?,
        None => print!("{json}"),
    }
    for c in &cert.checks {
        let verdict = if c.pass { "pass" } else { "FAIL" };
        let residual = c.residual.map_or("-".to_string(), |r| format!("{r:.3e}"));
        eprintln!("{verdict} {:<22} {:<28} residual {residual}  [{}]", c.check, c.subject, c.anchor);
        if let Some(e) = &c.error {
            eprintln!("     {e}");
        }
    }
    eprintln!("{}: {}", cert.scenario, if cert.pass { "all checks pass" } else { "some checks fail" });
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListChecks => {
            for c in CATALOGUE {
                println!("{:<22} {:<22} {}", c.id, c.params, c.anchor);
                println!("{:<22} {}", "", c.summary);
            }
            ExitCode::SUCCESS
        }
        Command::Verify { scenario, run } => match read_scenario(&scenario) {
            Ok(s) => execute(s, &run),
            Err(e) => input_error(e),
        },
        Command::Demo { name, run } => {
            let text = demo(&name).expect("clap restricts demo names");
            match parse_scenario(text) {
                Ok(s) => execute(s, &run),
                Err(e) => input_error(LoadError::Invalid(format!("built-in demo {name}: {e}"))),
            }
        }
    }
}

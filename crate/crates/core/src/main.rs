use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use aperiodic::app::{self, render_json, CommandOutput, EXIT_ERROR};
use aperiodic::config::{parse_p_list, Overrides, RunConfig};
use aperiodic::error::Error;

#[derive(Parser)]
#[command(name = "aperiodic", version, about = "Aperiodicity, terminal pairs and frequently hypercyclic weighted translations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide torsion / aperiodic with a certificate.
    Classify(Common),
    /// Build and validate a terminal pair.
    Pair(Common),
    /// Classify, build the pair and weight, and verify the criterion.
    Pipeline(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Directory for the JSON report and CSV curves.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "n-max")]
    n_max: Option<u64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Comma-separated exponents, e.g. "1,2".
    #[arg(long)]
    p: Option<String>,
}

fn load(c: &Common) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::load(&c.config)?;
    let p = c.p.as_deref().map(parse_p_list).transpose()?;
    cfg.apply(&Overrides { seed: c.seed, n_max: c.n_max, alpha: c.alpha, beta: c.beta, p })?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { 0 });
        }
    };
    let (common, name, run): (&Common, &str, fn(&RunConfig) -> CommandOutput) = match &cli.command {
        Command::Classify(c) => (c, "classification", app::run_classify),
        Command::Pair(c) => (c, "pair_validation", app::run_pair),
        Command::Pipeline(c) => (c, "report", app::run_pipeline),
    };
    let (out, dir) = match load(common) {
        Ok(cfg) => {
            let dir = common.out.clone().or_else(|| cfg.output.as_ref().and_then(|o| o.dir.clone()).map(PathBuf::from));
            (run(&cfg), dir)
        }
        Err(e) => (CommandOutput { exit_code: EXIT_ERROR, json: e.to_json(), csv: Vec::new() }, None),
    };
    print!("{}", render_json(&out.json));
    if let Some(dir) = dir {
        if let Err(e) = out.write_to(&dir, name) {
            let err = Error::Config(format!("cannot write to {}: {e}", dir.display()));
            eprint!("{}", render_json(&err.to_json()));
            return ExitCode::from(EXIT_ERROR as u8);
        }
    }
    if out.exit_code != 0 {
        eprintln!("exit {}: {}", out.exit_code, summary(&out));
    }
    ExitCode::from(out.exit_code as u8)
}

fn summary(out: &CommandOutput) -> String {
    if let Some(msg) = out.json.get("message").and_then(|m| m.as_str()) {
        return msg.to_string();
    }
    match out.exit_code {
        2 => "element is torsion".into(),
        3 => "inconclusive".into(),
        4 => "verification failed".into(),
        _ => "error".into(),
    }
}

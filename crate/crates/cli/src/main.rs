use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use qwalk_cli::commands::{self, DensityFunction};
use qwalk_cli::config::{RunConfig, Settings};
use qwalk_cli::{write_output, write_per_step};

#[derive(Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Exact and asymptotic quantum-walk probabilities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Flat key = value file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    a_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    phi1_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    phi1_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    phi2_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    phi2_im: Option<f64>,
    /// Comma-separated step counts.
    #[arg(long)]
    steps: Option<String>,
    /// Window lo:hi in xi = y/n; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    window: Vec<String>,
    #[arg(long)]
    wall_width: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact distributions, one table per step count.
    Simulate(Common),
    /// Exact against asymptotic probabilities.
    Compare(Common),
    /// Window mass against the integrated weak-limit density.
    Konno {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
    },
    /// Empirical large-deviation rate against the rate function.
    Rate {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<f64>,
    },
    /// Tabulates rho or the rate function.
    Density {
        #[command(flatten)]
        common: Common,
        /// rho or rate.
        #[arg(long)]
        function: Option<String>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Evaluates the Airy function.
    Airy {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
    },
}

fn settings(common: &Common, extra: &[(&str, Option<String>)]) -> Result<Settings> {
    let mut s = match &common.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    let floats = [
        ("a_re", common.a_re),
        ("a_im", common.a_im),
        ("b_re", common.b_re),
        ("b_im", common.b_im),
        ("phi1_re", common.phi1_re),
        ("phi1_im", common.phi1_im),
        ("phi2_re", common.phi2_re),
        ("phi2_im", common.phi2_im),
        ("wall_width", common.wall_width),
    ];
    for (key, v) in floats {
        if let Some(v) = v {
            s.set(key, v);
        }
    }
    if let Some(v) = &common.steps {
        s.set("steps", v);
    }
    if !common.window.is_empty() {
        s.set("window", common.window.join(","));
    }
    if let Some(v) = &common.out {
        s.set("out", v.display());
    }
    if let Some(v) = &common.format {
        s.set("format", v);
    }
    for (key, v) in extra {
        if let Some(v) = v {
            s.set(key, v);
        }
    }
    Ok(s)
}

fn show<T: ToString>(v: Option<T>) -> Option<String> {
    v.map(|v| v.to_string())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(common) => {
            let cfg = RunConfig::from_settings(&settings(&common, &[])?)?;
            write_per_step(&cfg, &commands::simulate(&cfg)?)?;
        }
        Command::Compare(common) => {
            let cfg = RunConfig::from_settings(&settings(&common, &[])?)?;
            write_output(&cfg, &commands::compare(&cfg)?)?;
        }
        Command::Konno {
            common,
            alpha,
            beta,
        } => {
            let s = settings(&common, &[("alpha", show(alpha)), ("beta", show(beta))])?;
            let cfg = RunConfig::from_settings(&s)?;
            let table = commands::konno(&cfg, s.require("alpha")?, s.require("beta")?)?;
            write_output(&cfg, &table)?;
        }
        Command::Rate { common, xi } => {
            let s = settings(&common, &[("xi", show(xi))])?;
            let cfg = RunConfig::from_settings(&s)?;
            write_output(&cfg, &commands::rate(&cfg, s.require("xi")?)?)?;
        }
        Command::Density {
            common,
            function,
            points,
        } => {
            let s = settings(&common, &[("function", function), ("points", show(points))])?;
            let cfg = RunConfig::from_settings(&s)?;
            let function: DensityFunction = s.parsed("function")?.unwrap_or(DensityFunction::Rho);
            let points = s.parsed("points")?.unwrap_or(101);
            write_output(&cfg, &commands::density(&cfg, function, points)?)?;
        }
        Command::Airy { common, x } => {
            let s = settings(&common, &[("x", show(x))])?;
            let cfg = RunConfig::from_settings(&s)?;
            write_output(&cfg, &commands::airy_table(s.require("x")?)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use avalanche_dg::{load_config, run_case, RunConfig};

/// Simulate a granular avalanche on an incline–arc–run-out chute.
#[derive(Debug, Parser)]
#[command(name = "avalanche", version)]
struct Cli {
    /// TOML configuration file.
    #[arg(long, conflicts_with = "case")]
    config: Option<PathBuf>,
    /// Preset case 1-4.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    case: Option<u8>,
    /// Output directory for snapshots and summary.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    n_cells: Option<usize>,
    #[arg(long)]
    t_end: Option<f64>,
    /// Comma-separated snapshot times, e.g. "0,12,24".
    #[arg(long)]
    snap: Option<String>,
    /// Abort when the CFL number exceeds 1/(2k+1).
    #[arg(long)]
    strict_cfl: bool,
    /// Parallelize per-cell passes over the rayon pool.
    #[arg(long)]
    parallel: bool,
    /// Print the resolved configuration as TOML and exit.
    #[arg(long)]
    dump_config: bool,
}

fn build_config(cli: &Cli) -> avalanche_dg::Result<RunConfig> {
    let mut cfg = match (&cli.config, cli.case) {
        (Some(path), _) => load_config(path)?,
        (None, Some(n)) => RunConfig::case(n)?,
        (None, None) => RunConfig::case(1)?,
    };
    if let Some(n) = cli.n_cells {
        cfg.numerical.n_cells = n;
    }
    if let Some(t) = cli.t_end {
        cfg.numerical.time.t_end = t;
        if cli.snap.is_none() {
            cfg.output.snapshot_times.retain(|&s| s <= t);
        }
    }
    if let Some(snap) = &cli.snap {
        cfg.output.snapshot_times = snap
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| avalanche_dg::Error::InvalidParameter {
                        name: "snap",
                        reason: format!("{s:?}: {e}"),
                    })
            })
            .collect::<Result<_, _>>()?;
    }
    if cli.strict_cfl {
        cfg.numerical.time.strict_cfl = true;
    }
    if cli.parallel {
        cfg.numerical.parallel = true;
    }
    if let Some(out) = &cli.out {
        cfg.output.directory = Some(out.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.dump_config {
        print!("{}", cfg.to_toml_string());
        return ExitCode::SUCCESS;
    }
    let label = match (&cli.config, cli.case) {
        (Some(p), _) => p.display().to_string(),
        (None, Some(n)) => format!("case {n}"),
        (None, None) => "case 1".to_string(),
    };
    match run_case(&cfg, &label) {
        Ok(out) => {
            let s = &out.summary;
            let last = s.times.len() - 1;
            println!("{label}: {} steps in {:.2} s", s.steps, s.wall_clock_seconds);
            println!("  t = {}", s.times[last]);
            println!("  max depth      {:.4}", s.max_depth[last]);
            println!("  max |u| (wet)  {:.3e}", s.max_speed[last]);
            match s.front_position[last] {
                Some(x) => println!("  front x_b      {x:.4}"),
                None => println!("  front x_b      none"),
            }
            println!("  mass drift     {:.3e}", s.max_relative_mass_drift());
            println!("  clamp mass     {:.3e}", s.clamp_mass_total);
            println!("  CFL max        {:.4}", s.cfl_max);
            match s.steady_time {
                Some(t) => println!("  at rest from   t = {t}"),
                None => println!("  still moving at t_end"),
            }
            if let Some(dir) = &cfg.output.directory {
                println!("  output in {}", dir.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

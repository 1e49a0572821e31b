//! Case runner: project, limit, integrate, record, write.

use std::fs;
use std::time::Instant;

use crate::config::RunConfig;
use crate::dg::Discretization;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::ModalField;
use crate::geometry::ChuteGeometry;
use crate::mesh::Mesh;
use crate::output::{self, Diagnostics, RunSummary, Snapshot};
use crate::time::{Solver, StageSettings};

/// Everything a run produces.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub summary: RunSummary,
    pub snapshots: Vec<Snapshot>,
    pub final_field: ModalField,
}

impl RunOutcome {
    pub fn snapshot_at(&self, t: f64) -> Option<&Snapshot> {
        self.snapshots.iter().find(|s| (s.t - t).abs() < 1e-9)
    }
}

/// Builds the solver for a config: projected pile, limited once, flags set.
pub fn initial_solver(config: &RunConfig) -> Result<Solver> {
    config.validate()?;
    let n = &config.numerical;
    let mesh = Mesh::uniform(n.domain_length, n.n_cells)?;
    let disc = Discretization::new(mesh, config.physical, n.degree)?;
    let field = config.initial.project(&mesh, n.degree)?;
    let settings = StageSettings {
        limiter: n.limiter,
        stopping: n.stopping,
        exec: n.execution(),
    };
    Ok(Solver::new(disc, field, settings))
}

/// Runs a configuration to `t_end`, writing snapshots and `summary.json` when
/// an output directory is configured.
pub fn run_case(config: &RunConfig, label: &str) -> Result<RunOutcome> {
    let started = Instant::now();
    let mut solver = initial_solver(config)?;
    let time = config.numerical.time;
    let mesh = *solver.discretization().mesh();
    let chute = ChuteGeometry::new(&config.physical);
    let record_every = config.output.record_every as u64;

    let mut summary = RunSummary {
        label: label.to_string(),
        initial_mass: solver.field().total_mass(&mesh),
        ..RunSummary::default()
    };
    let mut snapshots = Vec::new();
    let mut pending = config.output.snapshot_times.iter().copied().peekable();

    let diag = |s: &Solver| Diagnostics::of(s.field(), s.flags(), &mesh, &chute);
    let capture = |s: &Solver, t: f64| Snapshot::capture(t, s.field(), s.flags(), &mesh, &config.physical);

    summary.push(0.0, solver.clamp_total(), diag(&solver));
    while let Some(&ts) = pending.peek() {
        if ts > 0.0 {
            break;
        }
        snapshots.push(capture(&solver, ts));
        pending.next();
    }

    let fixed_steps = (time.t_end / time.dt).round() as u64;
    let mut t = 0.0;
    let mut n: u64 = 0;
    loop {
        let (dt, t_next) = if time.adaptive {
            if t >= time.t_end - 1e-12 {
                break;
            }
            let speed = solver.cfl(1.0, time.cfl_limit).max_speed;
            let mut dt = time.dt;
            if speed > 0.0 {
                dt = dt.min(0.9 * time.cfl_limit * mesh.dx() / speed);
            }
            let target = pending.peek().copied().unwrap_or(time.t_end).min(time.t_end);
            if t + dt >= target - 1e-12 {
                dt = target - t;
            }
            (dt, if dt == target - t { target } else { t + dt })
        } else {
            if n == fixed_steps {
                break;
            }
            (time.dt, (n + 1) as f64 * time.dt)
        };

        solver.watch_cfl(dt, &time)?;
        solver.step(dt, t_next);
        n += 1;
        t = t_next;

        while let Some(&ts) = pending.peek() {
            let due = if time.adaptive {
                ts <= t + 1e-12
            } else {
                (ts / time.dt).round() as u64 <= n
            };
            if !due {
                break;
            }
            snapshots.push(capture(&solver, ts));
            pending.next();
        }
        let last = if time.adaptive {
            t >= time.t_end - 1e-12
        } else {
            n == fixed_steps
        };
        if n.is_multiple_of(record_every) || last {
            summary.push(t, solver.clamp_total(), diag(&solver));
        }
    }

    summary.steps = solver.steps();
    summary.cfl_max = solver.cfl_max();
    summary.clamp_mass_total = solver.clamp_total();
    summary.finish();
    summary.wall_clock_seconds = started.elapsed().as_secs_f64();

    if let Some(dir) = &config.output.directory {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for s in &snapshots {
            output::write_snapshot(s, &dir.join(s.file_name()))?;
        }
        summary.write_json(&dir.join("summary.json"))?;
        let cfg = dir.join("config.toml");
        fs::write(&cfg, config.to_toml_string()).map_err(|e| Error::io(&cfg, e))?;
    }

    Ok(RunOutcome {
        summary,
        snapshots,
        final_field: solver.field().clone(),
    })
}

/// Runs independent configurations, in parallel when `exec` allows.
pub fn run_cases(configs: &[(String, RunConfig)], exec: Execution) -> Vec<Result<RunOutcome>> {
    exec.map_slice(configs, |(label, cfg)| run_case(cfg, label))
}

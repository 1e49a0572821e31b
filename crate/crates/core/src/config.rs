//! Run configuration: TOML documents with `[physical]`, `[numerical]`,
//! `[initial]` and `[output]` sections, plus presets for the four reference
//! chute cases. Angles are given in degrees on disk and stored in radians.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{InitialPile, PileShape};
use crate::limiter::LimiterParams;
use crate::physics::PhysicalParams;
use crate::stopping::StoppingParams;
use crate::time::TimeParams;

/// Snapshot times written by default.
pub const DEFAULT_SNAPSHOTS: [f64; 5] = [0.0, 12.0, 24.0, 36.0, 48.0];

#[derive(Debug, Clone, PartialEq)]
pub struct NumericalParams {
    pub domain_length: f64,
    pub n_cells: usize,
    pub degree: usize,
    pub time: TimeParams,
    pub limiter: LimiterParams,
    pub stopping: StoppingParams,
    pub parallel: bool,
}

impl NumericalParams {
    pub fn execution(&self) -> Execution {
        Execution::from_flag(self.parallel)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputParams {
    pub snapshot_times: Vec<f64>,
    /// Where snapshot and summary files go; `None` keeps results in memory.
    pub directory: Option<PathBuf>,
    /// Summary series are sampled every this many steps (and at the end).
    pub record_every: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub physical: PhysicalParams,
    pub numerical: NumericalParams,
    pub initial: InitialPile,
    pub output: OutputParams,
}

impl RunConfig {
    /// Reference chute with the given angles (degrees) and default numerics.
    pub fn with_angles(zeta0: f64, phi: f64, delta: f64) -> Result<Self> {
        RawConfig {
            physical: RawPhysical {
                zeta0: Some(zeta0),
                phi: Some(phi),
                delta: Some(delta),
                ..RawPhysical::default()
            },
            ..RawConfig::default()
        }
        .resolve()
    }

    /// Presets: I (35°, 30°, 30°), II (35°, 30°, 23°), III (35°, 37°, 30°),
    /// IV (40°, 30°, 30°) as (ζ₀, φ, δ).
    pub fn case(number: u8) -> Result<Self> {
        let (zeta0, phi, delta) = match number {
            1 => (35.0, 30.0, 30.0),
            2 => (35.0, 30.0, 23.0),
            3 => (35.0, 37.0, 30.0),
            4 => (40.0, 30.0, 30.0),
            _ => return Err(Error::invalid("case", format!("unknown case {number}, expected 1-4"))),
        };
        Self::with_angles(zeta0, phi, delta)
    }

    pub fn from_toml_str(text: &str, origin: &Path) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::ConfigParse {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })?;
        raw.resolve()
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(&RawConfig::from(self)).expect("config is always representable")
    }

    pub fn validate(&self) -> Result<()> {
        self.physical.validate()?;
        let n = &self.numerical;
        if n.degree > crate::basis::MAX_DEGREE {
            return Err(Error::UnsupportedDegree(n.degree));
        }
        crate::mesh::Mesh::uniform(n.domain_length, n.n_cells)?;
        n.time.validate()?;
        n.limiter.validate()?;
        n.stopping.validate()?;
        if !(self.initial.radius > 0.0) {
            return Err(Error::invalid("radius", "must be positive"));
        }
        let t = &self.output.snapshot_times;
        if t.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::invalid("snapshot_times", "must be sorted ascending"));
        }
        if t.iter().any(|&s| !(0.0..=n.time.t_end).contains(&s)) {
            return Err(Error::invalid("snapshot_times", "must lie in [0, t_end]"));
        }
        if self.output.record_every == 0 {
            return Err(Error::invalid("record_every", "must be at least 1"));
        }
        Ok(())
    }
}

/// Reads and validates a TOML run configuration.
pub fn load_config(path: impl AsRef<Path>) -> Result<RunConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    RunConfig::from_toml_str(&text, path)
}

/// Radians to degrees, snapping values within 1e-9° of a multiple of 1e-9° so
/// that presets print as typed.
fn degrees(rad: f64) -> f64 {
    let d = rad.to_degrees();
    let snapped = (d * 1e9).round() / 1e9;
    if snapped.to_radians() == rad {
        snapped
    } else {
        d
    }
}

// On-disk layout. Every field is optional so that missing required entries
// can be reported together.

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    physical: RawPhysical,
    #[serde(default)]
    numerical: RawNumerical,
    #[serde(default)]
    initial: RawInitial,
    #[serde(default)]
    output: RawOutput,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPhysical {
    zeta0: Option<f64>,
    phi: Option<f64>,
    delta: Option<f64>,
    epsilon: Option<f64>,
    chi: Option<f64>,
    x_incl_end: Option<f64>,
    x_trans_end: Option<f64>,
    yb0: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNumerical {
    domain_length: Option<f64>,
    n_cells: Option<usize>,
    degree: Option<usize>,
    dt: Option<f64>,
    t_end: Option<f64>,
    cfl_limit: Option<f64>,
    adaptive: Option<bool>,
    strict_cfl: Option<bool>,
    gamma: Option<f64>,
    h_semi: Option<f64>,
    h_eps: Option<f64>,
    u_stop: Option<f64>,
    hold_resting: Option<bool>,
    parallel: Option<bool>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInitial {
    shape: Option<RawShape>,
    radius: Option<f64>,
    center: Option<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawShape {
    Circle,
    Parabola,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    snapshot_times: Option<Vec<f64>>,
    directory: Option<PathBuf>,
    record_every: Option<usize>,
}

impl RawConfig {
    fn resolve(self) -> Result<RunConfig> {
        let p = &self.physical;
        let missing: Vec<String> = [("zeta0", p.zeta0), ("phi", p.phi), ("delta", p.delta)]
            .iter()
            .filter(|(_, v)| v.is_none())
            .map(|(k, _)| format!("physical.{k}"))
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingFields(missing));
        }

        let physical = PhysicalParams {
            zeta0: p.zeta0.unwrap().to_radians(),
            phi: p.phi.unwrap().to_radians(),
            delta: p.delta.unwrap().to_radians(),
            epsilon: p.epsilon.unwrap_or(1.85 / 30.0),
            chi: p.chi.unwrap_or(1.0),
            x_incl_end: p.x_incl_end.unwrap_or(17.5),
            x_trans_end: p.x_trans_end.unwrap_or(21.5),
            yb0: p.yb0.unwrap_or(10.0),
        };

        let n = &self.numerical;
        let degree = n.degree.unwrap_or(2);
        let mut time = TimeParams::new(n.dt.unwrap_or(1e-3), n.t_end.unwrap_or(48.0), degree);
        if let Some(c) = n.cfl_limit {
            time.cfl_limit = c;
        }
        time.adaptive = n.adaptive.unwrap_or(false);
        time.strict_cfl = n.strict_cfl.unwrap_or(false);
        let stop_default = StoppingParams::default();
        let numerical = NumericalParams {
            domain_length: n.domain_length.unwrap_or(30.0),
            n_cells: n.n_cells.unwrap_or(256),
            degree,
            time,
            limiter: LimiterParams {
                gamma: n.gamma.unwrap_or(0.5),
            },
            stopping: StoppingParams {
                h_semi: n.h_semi.unwrap_or(stop_default.h_semi),
                h_eps: n.h_eps.unwrap_or(stop_default.h_eps),
                u_stop: n.u_stop.unwrap_or(stop_default.u_stop),
                hold_resting: n.hold_resting.unwrap_or(stop_default.hold_resting),
            },
            parallel: n.parallel.unwrap_or(false),
        };

        let i = &self.initial;
        let initial = InitialPile {
            shape: match i.shape.unwrap_or(RawShape::Circle) {
                RawShape::Circle => PileShape::CircularCap,
                RawShape::Parabola => PileShape::Parabolic,
            },
            radius: i.radius.unwrap_or(1.85),
            center: i.center.unwrap_or(4.0),
        };

        let t_end = numerical.time.t_end;
        let o = self.output;
        let snapshot_times = o
            .snapshot_times
            .unwrap_or_else(|| DEFAULT_SNAPSHOTS.iter().copied().filter(|&t| t <= t_end).collect());
        let output = OutputParams {
            snapshot_times,
            directory: o.directory,
            record_every: o.record_every.unwrap_or(10),
        };

        let cfg = RunConfig {
            physical,
            numerical,
            initial,
            output,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl From<&RunConfig> for RawConfig {
    fn from(c: &RunConfig) -> Self {
        let p = &c.physical;
        let n = &c.numerical;
        RawConfig {
            physical: RawPhysical {
                zeta0: Some(degrees(p.zeta0)),
                phi: Some(degrees(p.phi)),
                delta: Some(degrees(p.delta)),
                epsilon: Some(p.epsilon),
                chi: Some(p.chi),
                x_incl_end: Some(p.x_incl_end),
                x_trans_end: Some(p.x_trans_end),
                yb0: Some(p.yb0),
            },
            numerical: RawNumerical {
                domain_length: Some(n.domain_length),
                n_cells: Some(n.n_cells),
                degree: Some(n.degree),
                dt: Some(n.time.dt),
                t_end: Some(n.time.t_end),
                cfl_limit: Some(n.time.cfl_limit),
                adaptive: Some(n.time.adaptive),
                strict_cfl: Some(n.time.strict_cfl),
                gamma: Some(n.limiter.gamma),
                h_semi: Some(n.stopping.h_semi),
                h_eps: Some(n.stopping.h_eps),
                u_stop: Some(n.stopping.u_stop),
                hold_resting: Some(n.stopping.hold_resting),
                parallel: Some(n.parallel),
            },
            initial: RawInitial {
                shape: Some(match c.initial.shape {
                    PileShape::CircularCap => RawShape::Circle,
                    PileShape::Parabolic => RawShape::Parabola,
                }),
                radius: Some(c.initial.radius),
                center: Some(c.initial.center),
            },
            output: RawOutput {
                snapshot_times: Some(c.output.snapshot_times.clone()),
                directory: c.output.directory.clone(),
                record_every: Some(c.output.record_every),
            },
        }
    }
}

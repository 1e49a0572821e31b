//! Snapshot files and the run summary.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::ModalField;
use crate::geometry::ChuteGeometry;
use crate::mesh::Mesh;
use crate::physics::PhysicalParams;
use crate::stopping::{CellFlags, Wetness};

pub const SNAPSHOT_HEADER: &str = "x,h,u,mstop,wet,xb,yb,surf_x,surf_y";

/// Mean speed under which the flow is reported as at rest.
pub const REST_SPEED: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotRow {
    pub x: f64,
    pub h: f64,
    pub u: f64,
    pub m_stop: u8,
    pub wetness: Wetness,
    pub x_b: f64,
    pub y_b: f64,
    pub surf_x: f64,
    pub surf_y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub rows: Vec<SnapshotRow>,
}

impl Snapshot {
    pub fn capture(t: f64, field: &ModalField, flags: &[CellFlags], mesh: &Mesh, physical: &PhysicalParams) -> Self {
        let chute = ChuteGeometry::new(physical);
        let rows = (0..field.n_cells())
            .map(|j| {
                let x = mesh.center(j);
                let h = field.h[j][0];
                let pt = chute.to_physical(x, h);
                let (surf_x, surf_y) = pt.surface();
                SnapshotRow {
                    x,
                    h,
                    u: field.mean_velocity(j),
                    m_stop: flags[j].m_stop(),
                    wetness: flags[j].wetness,
                    x_b: pt.x_b,
                    y_b: pt.y_b,
                    surf_x,
                    surf_y,
                }
            })
            .collect();
        Snapshot { t, rows }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(64 * (self.rows.len() + 2));
        let _ = writeln!(s, "# t = {}", self.t);
        s.push_str(SNAPSHOT_HEADER);
        s.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                r.x,
                r.h,
                r.u,
                r.m_stop,
                r.wetness.code(),
                r.x_b,
                r.y_b,
                r.surf_x,
                r.surf_y
            );
        }
        s
    }

    pub fn from_csv(text: &str) -> std::result::Result<Self, String> {
        let mut lines = text.lines();
        let t = lines
            .next()
            .and_then(|l| l.strip_prefix("# t = "))
            .ok_or("missing time line")?
            .trim()
            .parse::<f64>()
            .map_err(|e| e.to_string())?;
        if lines.next() != Some(SNAPSHOT_HEADER) {
            return Err("unexpected header".into());
        }
        let rows = lines
            .filter(|l| !l.is_empty())
            .map(|line| {
                let c: Vec<&str> = line.split(',').collect();
                if c.len() != 9 {
                    return Err(format!("expected 9 columns, got {}", c.len()));
                }
                let num = |i: usize| c[i].parse::<f64>().map_err(|e| e.to_string());
                let wetness = match c[4] {
                    "D" => Wetness::Dry,
                    "S" => Wetness::SemiWet,
                    "W" => Wetness::Wet,
                    other => return Err(format!("bad wetness code {other}")),
                };
                Ok(SnapshotRow {
                    x: num(0)?,
                    h: num(1)?,
                    u: num(2)?,
                    m_stop: c[3].parse().map_err(|e: std::num::ParseIntError| e.to_string())?,
                    wetness,
                    x_b: num(5)?,
                    y_b: num(6)?,
                    surf_x: num(7)?,
                    surf_y: num(8)?,
                })
            })
            .collect::<std::result::Result<Vec<_>, String>>()?;
        Ok(Snapshot { t, rows })
    }

    /// File name used inside an output directory.
    pub fn file_name(&self) -> String {
        format!("snapshot_t{:09.3}.csv", self.t)
    }
}

/// Writes `snapshot` as delimited text to `path`.
pub fn write_snapshot(snapshot: &Snapshot, path: &Path) -> Result<()> {
    fs::write(path, snapshot.to_csv()).map_err(|e| Error::io(path, e))
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Snapshot::from_csv(&text).map_err(|message| Error::ConfigParse {
        path: path.to_path_buf(),
        message,
    })
}

/// Time series recorded during a run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub label: String,
    pub initial_mass: f64,
    pub times: Vec<f64>,
    pub mass: Vec<f64>,
    /// Cumulative mass injected by clamping, at each recorded time.
    pub clamp_mass: Vec<f64>,
    pub max_depth: Vec<f64>,
    /// Largest `|ū|` over wet cells.
    pub max_speed: Vec<f64>,
    /// Horizontal position of the rightmost wet cell, if any.
    pub front_position: Vec<Option<f64>>,
    pub cfl_max: f64,
    pub clamp_mass_total: f64,
    pub steps: u64,
    /// First recorded time from which `max_speed` stays below [`REST_SPEED`].
    pub steady_time: Option<f64>,
    pub wall_clock_seconds: f64,
}

/// Per-record diagnostics of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub mass: f64,
    pub max_depth: f64,
    pub max_speed: f64,
    pub front_position: Option<f64>,
}

impl Diagnostics {
    pub fn of(field: &ModalField, flags: &[CellFlags], mesh: &Mesh, chute: &ChuteGeometry) -> Self {
        let wet = |j: usize| flags[j].wetness == Wetness::Wet;
        let max_speed = (0..field.n_cells())
            .filter(|&j| wet(j))
            .map(|j| field.mean_velocity(j).abs())
            .fold(0.0, f64::max);
        let front_position = (0..field.n_cells())
            .rev()
            .find(|&j| wet(j))
            .map(|j| chute.to_physical(mesh.center(j), 0.0).x_b);
        Diagnostics {
            mass: field.total_mass(mesh),
            max_depth: field.max_depth(),
            max_speed,
            front_position,
        }
    }
}

impl RunSummary {
    pub fn push(&mut self, t: f64, clamp_total: f64, d: Diagnostics) {
        self.times.push(t);
        self.mass.push(d.mass);
        self.clamp_mass.push(clamp_total);
        self.max_depth.push(d.max_depth);
        self.max_speed.push(d.max_speed);
        self.front_position.push(d.front_position);
    }

    /// Fills in [`RunSummary::steady_time`] from the recorded speeds.
    pub fn finish(&mut self) {
        let mut steady = None;
        for (t, &s) in self.times.iter().zip(&self.max_speed).rev() {
            if s < REST_SPEED {
                steady = Some(*t);
            } else {
                break;
            }
        }
        self.steady_time = steady;
    }

    /// Index of the last record at or before `t`.
    pub fn index_at(&self, t: f64) -> Option<usize> {
        self.times.iter().rposition(|&s| s <= t + 1e-9)
    }

    /// Largest `|mass(t) - clamp(t) - mass(0)| / mass(0)` over the records.
    pub fn max_relative_mass_drift(&self) -> f64 {
        self.mass
            .iter()
            .zip(&self.clamp_mass)
            .map(|(m, c)| (m - c - self.initial_mass).abs() / self.initial_mass)
            .fold(0.0, f64::max)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("summary serialises");
        fs::write(path, text).map_err(|e| Error::io(path, e))
    }
}

//! Discretised user densities.
//!
//! A density is a finite set of support points carrying probability mass.
//! [`DensityGrid`] puts one point at the centre of every cell of a regular
//! grid (midpoint rule); [`PointSet`] is an explicit weighted point list used
//! for toy instances. Everything downstream only sees [`MassSupport`].

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::association::Partition;
use crate::error::{Error, Result};
use crate::scenario::Area;

/// Tolerance on the total mass of any constructed density.
pub const MASS_TOLERANCE: f64 = 1e-12;

pub trait MassSupport: Sync {
    fn len(&self) -> usize;
    fn point(&self, i: usize) -> (f64, f64);
    fn masses(&self) -> &[f64];

    fn mass(&self, i: usize) -> f64 {
        self.masses()[i]
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid shape `(nx, ny)`; point sets report `(len, 1)`.
    fn shape(&self) -> (usize, usize) {
        (self.len(), 1)
    }
}

/// Compensated (Neumaier) sum.
pub fn stable_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

fn normalize(weights: &mut [f64], what: &str) -> Result<()> {
    if let Some(bad) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
        return Err(Error::invalid(
            what,
            format!("weight {bad} is not a finite non-negative number"),
        ));
    }
    let total = stable_sum(weights.iter().copied());
    if !(total > 0.0) {
        return Err(Error::invalid(what, "weights sum to zero"));
    }
    weights.iter_mut().for_each(|w| *w /= total);
    Ok(())
}

/// Probability mass per cell of an `nx x ny` grid over `area`, row-major
/// with `y` rows starting at `y_min`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    area: Area,
    nx: usize,
    ny: usize,
    mass: Vec<f64>,
}

impl DensityGrid {
    /// Builds a grid from non-negative weights, renormalising to unit mass.
    pub fn from_weights(area: Area, nx: usize, ny: usize, mut weights: Vec<f64>) -> Result<Self> {
        area.validate()?;
        if nx == 0 || ny == 0 {
            return Err(Error::invalid("density grid", "nx and ny must be >= 1"));
        }
        if weights.len() != nx * ny {
            return Err(Error::invalid(
                "density grid",
                format!("expected {} weights, got {}", nx * ny, weights.len()),
            ));
        }
        normalize(&mut weights, "density grid")?;
        Ok(DensityGrid {
            area,
            nx,
            ny,
            mass: weights,
        })
    }

    pub fn area(&self) -> &Area {
        &self.area
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn cell_size(&self) -> (f64, f64) {
        (self.area.width() / self.nx as f64, self.area.height() / self.ny as f64)
    }

    pub fn index(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    pub fn cell_center(&self, ix: usize, iy: usize) -> (f64, f64) {
        let (dx, dy) = self.cell_size();
        (
            self.area.x_min + (ix as f64 + 0.5) * dx,
            self.area.y_min + (iy as f64 + 0.5) * dy,
        )
    }

    /// Cell containing `(x, y)`, clamping points on the far edges inward.
    pub fn cell_of(&self, x: f64, y: f64) -> Option<(usize, usize)> {
        if !self.area.contains(x, y) {
            return None;
        }
        let (dx, dy) = self.cell_size();
        let ix = (((x - self.area.x_min) / dx) as usize).min(self.nx - 1);
        let iy = (((y - self.area.y_min) / dy) as usize).min(self.ny - 1);
        Some((ix, iy))
    }

    pub fn total_mass(&self) -> f64 {
        stable_sum(self.mass.iter().copied())
    }

    /// Reads the plain-text grid format: a header line
    /// `nx ny x_min x_max y_min y_max`, then `ny` rows of `nx` non-negative
    /// weights (first row at `y_min`). Blank lines and `#` comments are
    /// skipped. Weights are renormalised.
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let bad = |msg: String| Error::Parse(format!("density grid: {msg}"));
        let header: Vec<&str> = lines
            .next()
            .ok_or_else(|| bad("missing header".into()))?
            .split_whitespace()
            .collect();
        if header.len() != 6 {
            return Err(bad(format!("header needs 6 fields, found {}", header.len())));
        }
        let nx: usize = header[0].parse().map_err(|_| bad(format!("bad nx {:?}", header[0])))?;
        let ny: usize = header[1].parse().map_err(|_| bad(format!("bad ny {:?}", header[1])))?;
        let mut bounds = [0.0; 4];
        for (slot, field) in bounds.iter_mut().zip(&header[2..]) {
            *slot = field.parse().map_err(|_| bad(format!("bad bound {field:?}")))?;
        }
        let area = Area::new(bounds[0], bounds[1], bounds[2], bounds[3])?;
        let mut weights = Vec::with_capacity(nx * ny);
        for (row, line) in lines.enumerate() {
            let before = weights.len();
            for field in line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|f| !f.is_empty())
            {
                weights.push(field.parse::<f64>().map_err(|_| bad(format!("bad weight {field:?}")))?);
            }
            if weights.len() - before != nx {
                return Err(bad(format!(
                    "row {row} has {} values, expected {nx}",
                    weights.len() - before
                )));
            }
        }
        Self::from_weights(area, nx, ny, weights)
    }

    pub fn to_text(&self) -> String {
        let a = &self.area;
        let mut out = format!(
            "{} {} {} {} {} {}\n",
            self.nx, self.ny, a.x_min, a.x_max, a.y_min, a.y_max
        );
        for row in self.mass.chunks(self.nx) {
            let line: Vec<String> = row.iter().map(|m| m.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }
}

impl MassSupport for DensityGrid {
    fn len(&self) -> usize {
        self.mass.len()
    }

    fn point(&self, i: usize) -> (f64, f64) {
        self.cell_center(i % self.nx, i / self.nx)
    }

    fn masses(&self) -> &[f64] {
        &self.mass
    }

    fn shape(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }
}

/// Explicit weighted points, normalised to unit mass.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<(f64, f64)>,
    mass: Vec<f64>,
}

impl PointSet {
    pub fn new(points: Vec<(f64, f64)>, mut weights: Vec<f64>) -> Result<Self> {
        if points.is_empty() || points.len() != weights.len() {
            return Err(Error::invalid(
                "point set",
                "need one weight per point and at least one point",
            ));
        }
        normalize(&mut weights, "point set")?;
        Ok(PointSet { points, mass: weights })
    }
}

impl MassSupport for PointSet {
    fn len(&self) -> usize {
        self.points.len()
    }

    fn point(&self, i: usize) -> (f64, f64) {
        self.points[i]
    }

    fn masses(&self) -> &[f64] {
        &self.mass
    }
}

pub fn uniform_density(area: Area, nx: usize, ny: usize) -> Result<DensityGrid> {
    DensityGrid::from_weights(area, nx, ny, vec![1.0; nx * ny])
}

/// Isotropic Gaussian hotspot evaluated at cell centres and truncated to
/// the area.
pub fn truncated_gaussian_density(
    area: Area,
    center: (f64, f64),
    sigma: f64,
    nx: usize,
    ny: usize,
) -> Result<DensityGrid> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::invalid("gaussian density", "sigma must be > 0"));
    }
    if nx == 0 || ny == 0 {
        return Err(Error::invalid("density grid", "nx and ny must be >= 1"));
    }
    let probe = DensityGrid {
        area,
        nx,
        ny,
        mass: Vec::new(),
    };
    let r2: Vec<f64> = (0..nx * ny)
        .map(|i| {
            let (x, y) = probe.cell_center(i % nx, i / nx);
            (x - center.0).powi(2) + (y - center.1).powi(2)
        })
        .collect();
    // Shift by the smallest exponent so far-away hotspots do not underflow.
    let r2_min = r2.iter().copied().fold(f64::INFINITY, f64::min);
    let weights = r2
        .iter()
        .map(|r| (-(r - r2_min) / (2.0 * sigma * sigma)).exp())
        .collect();
    DensityGrid::from_weights(area, nx, ny, weights)
}

/// How a scenario's user density is generated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DensitySpec {
    #[default]
    Uniform,
    Gaussian {
        center: [f64; 2],
        sigma: f64,
    },
    /// Plain-text weight grid; see [`DensityGrid::read`].
    GridFile {
        path: PathBuf,
    },
}

impl DensitySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            DensitySpec::Gaussian { center, sigma } => {
                if !(center[0].is_finite() && center[1].is_finite()) {
                    return Err(Error::invalid("gaussian density", "center must be finite"));
                }
                if !(*sigma > 0.0 && sigma.is_finite()) {
                    return Err(Error::invalid("gaussian density", "sigma must be > 0"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Discretises onto an `nx x ny` grid over `area`. A grid file brings its
    /// own resolution and must cover the same area.
    pub fn build(&self, area: Area, nx: usize, ny: usize) -> Result<DensityGrid> {
        match self {
            DensitySpec::Uniform => uniform_density(area, nx, ny),
            DensitySpec::Gaussian { center, sigma } => {
                truncated_gaussian_density(area, (center[0], center[1]), *sigma, nx, ny)
            }
            DensitySpec::GridFile { path } => {
                let grid = DensityGrid::read(path)?;
                if grid.area != area {
                    return Err(Error::invalid(
                        "density grid",
                        format!("{} covers a different area than the scenario", path.display()),
                    ));
                }
                Ok(grid)
            }
        }
    }
}

/// Mass of the cells labelled `node_id`.
pub fn partition_mass<S: MassSupport + ?Sized>(support: &S, partition: &Partition, node_id: u32) -> Result<f64> {
    let k = partition
        .node_ids()
        .iter()
        .position(|&id| id == node_id)
        .ok_or(Error::UnknownNode(node_id))?;
    if partition.labels().len() != support.len() {
        return Err(Error::invalid("partition", "defined on a different grid"));
    }
    Ok(stable_sum(
        partition
            .labels()
            .iter()
            .zip(support.masses())
            .filter(|(&l, _)| l == k)
            .map(|(_, &m)| m),
    ))
}

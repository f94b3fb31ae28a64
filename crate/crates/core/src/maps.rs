//! Trajectory export (CSV, ASCII PLY) and sensor-map rasters (binary PPM).

use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::Vector2;
use thiserror::Error;

use crate::core4d::{EulerAngles, FourVector, PrimedAngles, Vector3};
use crate::pipeline::TrajectoryPoint;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapsError {
    #[error("EmptyTrajectory: nothing to export")]
    EmptyTrajectory,
    #[error("UnsupportedFormat: {0:?} (expected csv or ply)")]
    UnsupportedFormat(String),
    #[error("PointOutOfBounds: point {index} at ({u}, {v}) lies outside the grid")]
    PointOutOfBounds { index: usize, u: f64, v: f64 },
    #[error("DegenerateGrid: {0}")]
    DegenerateGrid(String),
    #[error("invalid color ramp: {0}")]
    InvalidRamp(String),
    #[error("invalid arrow scale {0}: must be finite and > 0")]
    InvalidArrowScale(f64),
    #[error("trajectory CSV line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Trajectory CSV header, 17 columns.
pub const TRAJECTORY_HEADER: &str =
    "t,zeta,x,y,z,vx,vy,vz,speed,gamma,tau_gamma,psi,theta,phi,psi_p,theta_p,phi_p";
const TRAJECTORY_COLUMNS: usize = 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Ply,
}

impl FromStr for ExportFormat {
    type Err = MapsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(ExportFormat::Csv),
            "ply" => Ok(ExportFormat::Ply),
            _ => Err(MapsError::UnsupportedFormat(s.to_string())),
        }
    }
}

/// Fixed nine fractional digits; negative zero prints as zero.
fn num(x: f64) -> String {
    let s = format!("{x:.9}");
    if s == "-0.000000000" {
        "0.000000000".to_string()
    } else {
        s
    }
}

fn row(out: &mut String, values: &[f64]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&num(*v));
    }
    out.push('\n');
}

fn point_values(p: &TrajectoryPoint) -> [f64; TRAJECTORY_COLUMNS] {
    [
        p.t,
        p.chi.zeta,
        p.chi.x,
        p.chi.y,
        p.chi.z,
        p.velocity.x,
        p.velocity.y,
        p.velocity.z,
        p.speed,
        p.gamma,
        p.tau_gamma,
        p.angles.psi,
        p.angles.theta,
        p.angles.phi,
        p.primed.psi_p,
        p.primed.theta_p,
        p.primed.phi_p,
    ]
}

pub fn trajectory_csv(points: &[TrajectoryPoint]) -> Result<String, MapsError> {
    if points.is_empty() {
        return Err(MapsError::EmptyTrajectory);
    }
    let mut out = String::with_capacity(points.len() * 200);
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for p in points {
        row(&mut out, &point_values(p));
    }
    Ok(out)
}

/// Velocity arrows scaled so the fastest point's arrow has length `arrow_scale`.
pub fn arrow_vectors(points: &[TrajectoryPoint], arrow_scale: f64) -> Result<Vec<Vector3>, MapsError> {
    if !(arrow_scale.is_finite() && arrow_scale > 0.0) {
        return Err(MapsError::InvalidArrowScale(arrow_scale));
    }
    let max = points.iter().map(|p| p.velocity.norm()).fold(0.0, f64::max);
    Ok(points
        .iter()
        .map(|p| {
            if max == 0.0 {
                Vector3::zeros()
            } else {
                p.velocity * (arrow_scale / max)
            }
        })
        .collect())
}

pub fn trajectory_ply(points: &[TrajectoryPoint], arrow_scale: f64) -> Result<String, MapsError> {
    if points.is_empty() {
        return Err(MapsError::EmptyTrajectory);
    }
    let arrows = arrow_vectors(points, arrow_scale)?;
    let mut out = String::with_capacity(points.len() * 120 + 256);
    out.push_str("ply\nformat ascii 1.0\n");
    let _ = writeln!(out, "element vertex {}", points.len());
    for name in ["x", "y", "z", "zeta", "speed", "gamma", "vx", "vy", "vz"] {
        let _ = writeln!(out, "property double {name}");
    }
    out.push_str("end_header\n");
    for (p, a) in points.iter().zip(&arrows) {
        let values = [p.chi.x, p.chi.y, p.chi.z, p.chi.zeta, p.speed, p.gamma, a.x, a.y, a.z];
        let line: Vec<String> = values.iter().map(|v| num(*v)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn export_trajectory(
    points: &[TrajectoryPoint],
    format: ExportFormat,
    arrow_scale: f64,
) -> Result<Vec<u8>, MapsError> {
    match format {
        ExportFormat::Csv => trajectory_csv(points),
        ExportFormat::Ply => trajectory_ply(points, arrow_scale),
    }
    .map(String::into_bytes)
}

/// Reads a trajectory CSV written by [`trajectory_csv`].
pub fn parse_trajectory_csv(text: &str) -> Result<Vec<TrajectoryPoint>, MapsError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, h)) if h == TRAJECTORY_HEADER => {}
        Some((line, _)) => {
            return Err(MapsError::Parse {
                line,
                message: format!("expected header {TRAJECTORY_HEADER:?}"),
            })
        }
        None => {
            return Err(MapsError::Parse {
                line: 1,
                message: "missing header".into(),
            })
        }
    }
    lines
        .map(|(line, l)| {
            let fields: Vec<&str> = l.split(',').collect();
            if fields.len() != TRAJECTORY_COLUMNS {
                return Err(MapsError::Parse {
                    line,
                    message: format!("expected {TRAJECTORY_COLUMNS} columns, found {}", fields.len()),
                });
            }
            let mut v = [0.0; TRAJECTORY_COLUMNS];
            for (slot, f) in v.iter_mut().zip(&fields) {
                *slot = f
                    .trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| MapsError::Parse {
                        line,
                        message: format!("invalid number {f:?}"),
                    })?;
            }
            Ok(TrajectoryPoint {
                t: v[0],
                chi: FourVector::new(v[1], v[2], v[3], v[4]),
                velocity: Vector3::new(v[5], v[6], v[7]),
                speed: v[8],
                gamma: v[9],
                tau_gamma: v[10],
                angles: EulerAngles::new(v[11], v[12], v[13]),
                primed: PrimedAngles::new(v[14], v[15], v[16]),
            })
        })
        .collect()
}

/// Ground plane a sensor map is drawn in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Projection {
    #[default]
    Xy,
    /// Horizontal axis x, vertical axis ζ.
    XZeta,
}

impl Projection {
    fn project(self, p: &TrajectoryPoint) -> Vector2<f64> {
        match self {
            Projection::Xy => Vector2::new(p.chi.x, p.chi.y),
            Projection::XZeta => Vector2::new(p.chi.x, p.chi.zeta),
        }
    }
}

impl FromStr for Projection {
    type Err = MapsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "xy" => Ok(Projection::Xy),
            "xzeta" | "x_zeta" => Ok(Projection::XZeta),
            other => Err(MapsError::DegenerateGrid(format!("unknown projection {other:?}"))),
        }
    }
}

/// Grid layout requested for a sensor map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    pub origin: Vector2<f64>,
    pub cell_size: f64,
    pub width: usize,
    pub height: usize,
    /// Fit origin and extent to the data, keeping `cell_size`.
    pub auto_fit: bool,
    pub projection: Projection,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            origin: Vector2::zeros(),
            cell_size: 0.1,
            width: 64,
            height: 64,
            auto_fit: true,
            projection: Projection::Xy,
        }
    }
}

const MAX_CELLS: usize = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CellStats {
    pub count: u64,
    /// Mean speed of the points in the cell, m/s.
    pub mean_speed: f64,
    /// Mean spatial step from the previous point, m.
    pub mean_step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensorMapGrid {
    pub origin: Vector2<f64>,
    pub cell_size: f64,
    pub width: usize,
    pub height: usize,
    /// Row-major, row 0 at the minimum vertical coordinate.
    pub cells: Vec<CellStats>,
}

impl SensorMapGrid {
    pub fn cell(&self, ix: usize, iy: usize) -> &CellStats {
        &self.cells[iy * self.width + ix]
    }

    pub fn total_count(&self) -> u64 {
        self.cells.iter().map(|c| c.count).sum()
    }

    /// Cell index containing `p`, if any.
    pub fn locate(&self, p: Vector2<f64>) -> Option<(usize, usize)> {
        let fx = ((p.x - self.origin.x) / self.cell_size).floor();
        let fy = ((p.y - self.origin.y) / self.cell_size).floor();
        if fx >= 0.0 && fy >= 0.0 && fx < self.width as f64 && fy < self.height as f64 {
            Some((fx as usize, fy as usize))
        } else {
            None
        }
    }
}

/// Piecewise-linear speed-to-color map.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorRamp {
    stops: Vec<(f64, [u8; 3])>,
    channel: usize,
}

impl Default for ColorRamp {
    /// Blue at 0 m/s to red at 1 m/s; red is the monotone channel.
    fn default() -> Self {
        Self {
            stops: vec![(0.0, [0, 0, 255]), (1.0, [255, 0, 0])],
            channel: 0,
        }
    }
}

impl ColorRamp {
    /// `channel` is 0, 1 or 2 for red, green or blue and must strictly
    /// increase from stop to stop.
    pub fn new(stops: Vec<(f64, [u8; 3])>, channel: usize) -> Result<Self, MapsError> {
        let bad = |m: String| Err(MapsError::InvalidRamp(m));
        if channel > 2 {
            return bad(format!("channel {channel} is not 0, 1 or 2"));
        }
        if stops.len() < 2 {
            return bad("need at least two stops".into());
        }
        if !stops.iter().all(|(v, _)| v.is_finite()) {
            return bad("stop values must be finite".into());
        }
        for w in stops.windows(2) {
            if w[1].0 <= w[0].0 {
                return bad(format!("stop values must increase: {} then {}", w[0].0, w[1].0));
            }
            if w[1].1[channel] <= w[0].1[channel] {
                return bad(format!(
                    "channel {channel} must increase: {} then {}",
                    w[0].1[channel], w[1].1[channel]
                ));
            }
        }
        Ok(Self { stops, channel })
    }

    pub fn stops(&self) -> &[(f64, [u8; 3])] {
        &self.stops
    }

    pub fn channel(&self) -> usize {
        self.channel
    }

    /// Color for `value`, clamped to the end stops.
    pub fn color(&self, value: f64) -> [u8; 3] {
        let first = self.stops[0];
        let last = self.stops[self.stops.len() - 1];
        if value.is_nan() || value <= first.0 {
            return first.1;
        }
        if value >= last.0 {
            return last.1;
        }
        let k = self.stops.partition_point(|(v, _)| *v <= value);
        let (v0, c0) = self.stops[k - 1];
        let (v1, c1) = self.stops[k];
        let w = (value - v0) / (v1 - v0);
        let mut out = [0u8; 3];
        for i in 0..3 {
            let x = f64::from(c0[i]) * (1.0 - w) + f64::from(c1[i]) * w;
            out[i] = x.round().clamp(0.0, 255.0) as u8;
        }
        out
    }
}

fn fit_grid(
    config: &GridConfig,
    projected: &[Vector2<f64>],
) -> Result<(Vector2<f64>, usize, usize), MapsError> {
    if !(config.auto_fit && !projected.is_empty()) {
        return Ok((config.origin, config.width, config.height));
    }
    let min = projected.iter().fold(Vector2::repeat(f64::INFINITY), |m, p| m.inf(p));
    let max = projected.iter().fold(Vector2::repeat(f64::NEG_INFINITY), |m, p| m.sup(p));
    let span = max - min;
    let cells = |s: f64| {
        let n = (s / config.cell_size).floor() + 1.0;
        if n.is_finite() && n <= MAX_CELLS as f64 {
            Ok(n as usize)
        } else {
            Err(MapsError::DegenerateGrid(format!(
                "auto-fit span {s} m needs too many cells of {} m",
                config.cell_size
            )))
        }
    };
    Ok((min, cells(span.x)?, cells(span.y)?))
}

/// Bins the trajectory into grid cells and renders the per-cell mean speed
/// through `ramp` as a binary PPM. Empty cells are white; image row 0 is the
/// maximum vertical coordinate.
pub fn render_sensor_map(
    points: &[TrajectoryPoint],
    config: &GridConfig,
    ramp: &ColorRamp,
) -> Result<(SensorMapGrid, Vec<u8>), MapsError> {
    if !(config.cell_size.is_finite() && config.cell_size > 0.0) {
        return Err(MapsError::DegenerateGrid(format!(
            "cell size must be > 0, got {}",
            config.cell_size
        )));
    }
    if !config.origin.iter().all(|c| c.is_finite()) {
        return Err(MapsError::DegenerateGrid("origin must be finite".into()));
    }
    let projected: Vec<Vector2<f64>> = points.iter().map(|p| config.projection.project(p)).collect();
    let (origin, width, height) = fit_grid(config, &projected)?;
    if width == 0 || height == 0 {
        return Err(MapsError::DegenerateGrid(format!("{width}x{height} grid has zero area")));
    }
    if width.checked_mul(height).is_none_or(|n| n > MAX_CELLS) {
        return Err(MapsError::DegenerateGrid(format!("{width}x{height} grid is too large")));
    }
    let mut grid = SensorMapGrid {
        origin,
        cell_size: config.cell_size,
        width,
        height,
        cells: vec![CellStats::default(); width * height],
    };
    let mut sums = vec![(0.0f64, 0.0f64); width * height];
    for (index, (p, uv)) in points.iter().zip(&projected).enumerate() {
        let (ix, iy) = grid.locate(*uv).ok_or(MapsError::PointOutOfBounds {
            index,
            u: uv.x,
            v: uv.y,
        })?;
        let step = if index == 0 {
            0.0
        } else {
            (p.chi.spatial() - points[index - 1].chi.spatial()).norm()
        };
        let k = iy * width + ix;
        grid.cells[k].count += 1;
        sums[k].0 += p.speed;
        sums[k].1 += step;
    }
    for (cell, (speed, step)) in grid.cells.iter_mut().zip(&sums) {
        if cell.count > 0 {
            cell.mean_speed = speed / cell.count as f64;
            cell.mean_step = step / cell.count as f64;
        }
    }

    let mut ppm = format!("P6\n{width} {height}\n255\n").into_bytes();
    ppm.reserve(width * height * 3);
    for row in 0..height {
        let iy = height - 1 - row;
        for ix in 0..width {
            let cell = grid.cell(ix, iy);
            let rgb = if cell.count == 0 {
                [255, 255, 255]
            } else {
                ramp.color(cell.mean_speed)
            };
            ppm.extend_from_slice(&rgb);
        }
    }
    Ok((grid, ppm))
}

/// Per-cell table: `ix,iy,u_min,v_min,count,mean_speed,mean_step`.
pub fn cells_csv(grid: &SensorMapGrid) -> String {
    let mut out = String::from("ix,iy,u_min,v_min,count,mean_speed,mean_step\n");
    for iy in 0..grid.height {
        for ix in 0..grid.width {
            let c = grid.cell(ix, iy);
            let u = grid.origin.x + ix as f64 * grid.cell_size;
            let v = grid.origin.y + iy as f64 * grid.cell_size;
            let _ = writeln!(
                out,
                "{ix},{iy},{},{},{},{},{}",
                num(u),
                num(v),
                c.count,
                num(c.mean_speed),
                num(c.mean_step)
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn point(t: f64, pos: [f64; 3], vel: [f64; 3]) -> TrajectoryPoint {
        let velocity = Vector3::from(vel);
        let speed = velocity.norm();
        TrajectoryPoint {
            t,
            chi: FourVector::new(0.0, pos[0], pos[1], pos[2]),
            velocity,
            speed,
            gamma: 1.0 / (1.0 - speed * speed).sqrt(),
            tau_gamma: 0.0,
            angles: EulerAngles::ZERO,
            primed: PrimedAngles::ZERO,
        }
    }

    #[test]
    fn csv_single_static_point() {
        let csv = trajectory_csv(&[point(2.5, [0.0; 3], [0.0; 3])]).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), TRAJECTORY_HEADER);
        assert_eq!(TRAJECTORY_HEADER.split(',').count(), 17);
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields.len(), 17);
        assert_eq!(fields[0], "2.500000000");
        assert_eq!(fields[9], "1.000000000");
        assert!(fields[1..9].iter().chain(&fields[10..]).all(|f| *f == "0.000000000"));
        assert!(lines.next().is_none());
    }

    #[test]
    fn negative_zero_prints_as_zero() {
        assert_eq!(num(-0.0), "0.000000000");
        assert_eq!(num(-1e-12), "0.000000000");
        assert_eq!(num(-0.25), "-0.250000000");
    }

    #[test]
    fn csv_round_trip() {
        let pts: Vec<_> = (0..20)
            .map(|k| {
                let t = k as f64 * 0.1;
                point(t, [t.sin(), -t * 1.7, 1e-3 * t], [0.1 * t.cos(), -0.3, 0.0])
            })
            .collect();
        let parsed = parse_trajectory_csv(&trajectory_csv(&pts).unwrap()).unwrap();
        assert_eq!(parsed.len(), pts.len());
        for (a, b) in pts.iter().zip(&parsed) {
            for (x, y) in point_values(a).iter().zip(point_values(b).iter()) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(parse_trajectory_csv("").is_err());
        assert!(parse_trajectory_csv("t,x\n").is_err());
        let bad = format!("{TRAJECTORY_HEADER}\n1,2,3\n");
        assert!(matches!(parse_trajectory_csv(&bad), Err(MapsError::Parse { line: 2, .. })));
        let nan = format!("{TRAJECTORY_HEADER}\n{}\n", ["nan"; 17].join(","));
        assert!(parse_trajectory_csv(&nan).is_err());
    }

    #[test]
    fn ply_header_and_arrows() {
        let pts = [point(0.0, [0.0; 3], [0.0; 3]), point(1.0, [1.0, 0.0, 0.0], [0.3, 0.4, 0.0])];
        let ply = trajectory_ply(&pts, 2.0).unwrap();
        assert!(ply.starts_with("ply\nformat ascii 1.0\nelement vertex 2\n"));
        let body: Vec<&str> = ply.split("end_header\n").nth(1).unwrap().lines().collect();
        assert_eq!(body.len(), 2);
        assert!(body[0].ends_with("0.000000000 0.000000000 0.000000000"));
        assert!(body[1].ends_with("1.200000000 1.600000000 0.000000000"));
        let arrows = arrow_vectors(&pts, 2.0).unwrap();
        assert_eq!(arrows[0], Vector3::zeros());
        assert_abs_diff_eq!(arrows[1].norm(), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn export_errors() {
        assert_eq!(export_trajectory(&[], ExportFormat::Csv, 1.0), Err(MapsError::EmptyTrajectory));
        assert!(matches!("png".parse::<ExportFormat>(), Err(MapsError::UnsupportedFormat(_))));
        let p = [point(0.0, [0.0; 3], [0.1, 0.0, 0.0])];
        assert!(matches!(
            export_trajectory(&p, ExportFormat::Ply, 0.0),
            Err(MapsError::InvalidArrowScale(_))
        ));
    }

    #[test]
    fn ramp_validation_and_interpolation() {
        let ramp = ColorRamp::default();
        assert_eq!(ramp.color(-1.0), [0, 0, 255]);
        assert_eq!(ramp.color(0.5), [128, 0, 128]);
        assert_eq!(ramp.color(7.0), [255, 0, 0]);
        assert!(ColorRamp::new(vec![(0.0, [0, 0, 0])], 0).is_err());
        assert!(ColorRamp::new(vec![(1.0, [0, 0, 0]), (0.0, [9, 0, 0])], 0).is_err());
        assert!(ColorRamp::new(vec![(0.0, [9, 0, 0]), (1.0, [9, 0, 0])], 0).is_err());
        assert!(ColorRamp::new(vec![(0.0, [0, 0, 0]), (1.0, [0, 9, 0])], 1).is_ok());
    }

    #[test]
    fn empty_trajectory_fixed_grid_is_white() {
        let cfg = GridConfig {
            width: 2,
            height: 2,
            auto_fit: false,
            ..GridConfig::default()
        };
        let (grid, ppm) = render_sensor_map(&[], &cfg, &ColorRamp::default()).unwrap();
        assert_eq!(grid.total_count(), 0);
        let header = b"P6\n2 2\n255\n";
        assert_eq!(&ppm[..header.len()], header);
        assert!(ppm[header.len()..].iter().all(|b| *b == 255));
        assert_eq!(ppm.len(), header.len() + 12);
    }

    #[test]
    fn single_point_at_center() {
        let cfg = GridConfig {
            origin: Vector2::new(-1.5, -1.5),
            cell_size: 1.0,
            width: 3,
            height: 3,
            auto_fit: false,
            projection: Projection::Xy,
        };
        let pts = [point(0.0, [0.0; 3], [0.0; 3])];
        let (grid, ppm) = render_sensor_map(&pts, &cfg, &ColorRamp::default()).unwrap();
        assert_eq!(grid.cell(1, 1).count, 1);
        let pixels: Vec<&[u8]> = ppm[b"P6\n3 3\n255\n".len()..].chunks(3).collect();
        let colored: Vec<usize> = (0..9).filter(|i| pixels[*i] != [255, 255, 255]).collect();
        assert_eq!(colored, vec![4]);
    }

    #[test]
    fn north_up_rows() {
        let cfg = GridConfig {
            cell_size: 1.0,
            width: 1,
            height: 2,
            auto_fit: false,
            ..GridConfig::default()
        };
        // one slow point in the upper cell only
        let pts = [point(0.0, [0.5, 1.5, 0.0], [0.0; 3])];
        let (_, ppm) = render_sensor_map(&pts, &cfg, &ColorRamp::default()).unwrap();
        let px = &ppm[b"P6\n1 2\n255\n".len()..];
        assert_eq!(&px[..3], &[0, 0, 255]);
        assert_eq!(&px[3..], &[255, 255, 255]);
    }

    #[test]
    fn out_of_bounds_and_degenerate() {
        let cfg = GridConfig {
            width: 1,
            height: 1,
            cell_size: 1.0,
            auto_fit: false,
            ..GridConfig::default()
        };
        let pts = [point(0.0, [5.0, 0.0, 0.0], [0.0; 3])];
        assert!(matches!(
            render_sensor_map(&pts, &cfg, &ColorRamp::default()),
            Err(MapsError::PointOutOfBounds { index: 0, .. })
        ));
        let zero = GridConfig { width: 0, ..cfg };
        assert!(matches!(
            render_sensor_map(&[], &zero, &ColorRamp::default()),
            Err(MapsError::DegenerateGrid(_))
        ));
        let neg = GridConfig { cell_size: -1.0, ..cfg };
        assert!(render_sensor_map(&[], &neg, &ColorRamp::default()).is_err());
    }

    #[test]
    fn auto_fit_bins_every_point() {
        let pts: Vec<_> = (0..50)
            .map(|k| {
                let t = k as f64 * 0.37;
                point(t, [t.cos() * 3.0, t.sin() * 2.0 - 7.0, 0.0], [0.1, 0.0, 0.0])
            })
            .collect();
        let cfg = GridConfig {
            cell_size: 0.25,
            ..GridConfig::default()
        };
        let (grid, _) = render_sensor_map(&pts, &cfg, &ColorRamp::default()).unwrap();
        assert_eq!(grid.total_count(), 50);
        let csv = cells_csv(&grid);
        assert_eq!(csv.lines().count(), grid.width * grid.height + 1);
    }

    #[test]
    fn mean_step_tracks_distance() {
        let pts = [
            point(0.0, [0.1, 0.1, 0.0], [0.0; 3]),
            point(1.0, [0.4, 0.1, 0.0], [0.0; 3]),
        ];
        let cfg = GridConfig {
            cell_size: 1.0,
            width: 1,
            height: 1,
            auto_fit: false,
            ..GridConfig::default()
        };
        let (grid, _) = render_sensor_map(&pts, &cfg, &ColorRamp::default()).unwrap();
        assert_eq!(grid.cell(0, 0).count, 2);
        assert_abs_diff_eq!(grid.cell(0, 0).mean_step, 0.15, epsilon = 1e-12);
    }
}

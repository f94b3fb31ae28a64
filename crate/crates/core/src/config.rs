//! Flat `key = value` configuration shared by every subcommand.
//!
//! ```text
//! # relativity
//! c = 1.0
//! rotation_order = xy xz yz zeta_x zeta_y zeta_z
//! frame = sensor_intrinsic world 1 0 0 0 1 0 0 0 1 0 0 0
//! gravity = 0 0 9.81
//! grid_cell_size = 0.05
//! ramp_stop = 0.0 0 0 255
//! ramp_stop = 1.0 255 0 0
//! ```
//!
//! Vector values are whitespace-separated. `frame` and `ramp_stop` may repeat;
//! every other key may appear once. Unknown keys are rejected and every value
//! is checked when the file is loaded.
//!
//! | key | value |
//! |---|---|
//! | `c`, `epsilon_speed` | relativity settings |
//! | `accel_bias`, `velocity_correction` | 3 values each |
//! | `rotation_order` | six plane tags |
//! | `zeta_mode` | `cumulative` or `incremental` |
//! | `tail_window` | seconds, ≥ 0 |
//! | `tail_source` | `raw` or `corrected` |
//! | `frame` | `from to r11 r12 r13 r21 r22 r23 r31 r32 r33 tx ty tz` |
//! | `gravity` | 3 values, applied to the last frame |
//! | `initial_velocity`, `initial_translation` | 3 values each |
//! | `initial_angles` | `psi theta phi` |
//! | `grid_origin` | 2 values |
//! | `grid_cell_size`, `grid_width`, `grid_height` | grid layout |
//! | `grid_auto_fit` | `true` or `false` |
//! | `grid_plane` | `xy` or `xzeta` |
//! | `ramp_stop` | `value r g b` |
//! | `ramp_channel` | `red`, `green` or `blue` |
//! | `arrow_scale` | > 0 |
//! | `profile` | `rest`, `constant_accel`, `linear_ramp`, `circle` or `sinusoid` |
//! | `accel`, `jerk`, `amplitude` | 3 values, per profile |
//! | `radius`, `period`, `duration`, `rate` | profile scalars |
//! | `noise_accel`, `noise_gyro`, `noise_mag` | Gaussian sigmas |
//! | `seed` | unsigned 64-bit integer |

use std::collections::HashSet;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector2};
use thiserror::Error;

use crate::core4d::{EulerAngles, RelativityConfig, RotationOrder, Vector3};
use crate::frames::{FrameChain, FrameId, FrameTransform};
use crate::maps::{ColorRamp, GridConfig, Projection};
use crate::pipeline::{PipelineConfig, TailSource, ZetaMode};
use crate::sim::{MotionProfile, NoiseSigma, ProfileKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("config line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("config: {0}")]
    Invalid(String),
}

/// Parsed and validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub pipeline: PipelineConfig,
    pub grid: GridConfig,
    pub ramp: ColorRamp,
    pub arrow_scale: f64,
    /// Present when the file has a `profile` key.
    pub profile: Option<MotionProfile>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            pipeline: PipelineConfig::default(),
            grid: GridConfig::default(),
            ramp: ColorRamp::default(),
            arrow_scale: 1.0,
            profile: None,
        }
    }
}

const REPEATABLE: [&str; 2] = ["frame", "ramp_stop"];
const PROFILE_KEYS: [&str; 12] = [
    "accel",
    "jerk",
    "radius",
    "period",
    "amplitude",
    "duration",
    "rate",
    "noise_accel",
    "noise_gyro",
    "noise_mag",
    "seed",
    "profile",
];

struct Entry<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
}

fn err(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Line {
        line,
        message: message.into(),
    }
}

fn floats(e: &Entry, n: usize) -> Result<Vec<f64>, ConfigError> {
    let vals: Vec<f64> = e
        .value
        .split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(e.line, format!("{}: {t:?} is not a finite number", e.key)))
        })
        .collect::<Result<_, _>>()?;
    if vals.len() != n {
        return Err(err(e.line, format!("{} expects {n} values, got {}", e.key, vals.len())));
    }
    Ok(vals)
}

fn scalar(e: &Entry) -> Result<f64, ConfigError> {
    Ok(floats(e, 1)?[0])
}

fn vec3(e: &Entry) -> Result<Vector3, ConfigError> {
    Ok(Vector3::from_column_slice(&floats(e, 3)?))
}

fn positive(e: &Entry) -> Result<f64, ConfigError> {
    let v = scalar(e)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(err(e.line, format!("{} must be > 0, got {v}", e.key)))
    }
}

fn count(e: &Entry) -> Result<usize, ConfigError> {
    match e.value.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(err(e.line, format!("{} must be a positive integer, got {:?}", e.key, e.value))),
    }
}

fn parse_with<T, E: std::fmt::Display>(e: &Entry, f: impl FnOnce(&str) -> Result<T, E>) -> Result<T, ConfigError> {
    f(e.value).map_err(|x| err(e.line, format!("{}: {x}", e.key)))
}

fn frame(e: &Entry) -> Result<FrameTransform, ConfigError> {
    let tokens: Vec<&str> = e.value.split_whitespace().collect();
    if tokens.len() != 14 {
        return Err(err(
            e.line,
            format!("frame expects `from to` plus 12 numbers, got {} fields", tokens.len()),
        ));
    }
    let from: FrameId = tokens[0].parse().map_err(|x| err(e.line, format!("{x}")))?;
    let to: FrameId = tokens[1].parse().map_err(|x| err(e.line, format!("{x}")))?;
    let rest = tokens[2..].join(" ");
    let nums = floats(
        &Entry {
            line: e.line,
            key: e.key,
            value: &rest,
        },
        12,
    )?;
    let rotation = Matrix3::from_row_slice(&nums[..9]);
    let tf = FrameTransform::new(from, to, rotation, Vector3::from_column_slice(&nums[9..]));
    tf.validate().map_err(|x| err(e.line, x.to_string()))?;
    Ok(tf)
}

fn ramp_stop(e: &Entry) -> Result<(f64, [u8; 3]), ConfigError> {
    let tokens: Vec<&str> = e.value.split_whitespace().collect();
    if tokens.len() != 4 {
        return Err(err(e.line, "ramp_stop expects `value r g b`"));
    }
    let value = tokens[0]
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| err(e.line, format!("ramp_stop value {:?} is not a finite number", tokens[0])))?;
    let mut rgb = [0u8; 3];
    for (slot, t) in rgb.iter_mut().zip(&tokens[1..]) {
        *slot = t
            .parse::<u8>()
            .map_err(|_| err(e.line, format!("ramp_stop channel {t:?} is not in 0..=255")))?;
    }
    Ok((value, rgb))
}

fn channel(e: &Entry) -> Result<usize, ConfigError> {
    match e.value {
        "red" | "r" | "0" => Ok(0),
        "green" | "g" | "1" => Ok(1),
        "blue" | "b" | "2" => Ok(2),
        other => Err(err(e.line, format!("ramp_channel {other:?} is not red, green or blue"))),
    }
}

fn flag(e: &Entry) -> Result<bool, ConfigError> {
    match e.value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(err(e.line, format!("{} expects true or false, got {other:?}", e.key))),
    }
}

fn split_lines(text: &str) -> Result<Vec<Entry<'_>>, ConfigError> {
    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (key, value) = l
            .split_once('=')
            .ok_or_else(|| err(line, format!("expected `key = value`, got {l:?}")))?;
        let key = key.trim();
        let value = value.trim();
        if !REPEATABLE.contains(&key) && !seen.insert(key) {
            return Err(err(line, format!("duplicate key {key:?}")));
        }
        entries.push(Entry { line, key, value });
    }
    Ok(entries)
}

#[derive(Default)]
struct ProfileParts {
    kind: Option<(usize, String)>,
    accel: Option<Vector3>,
    jerk: Option<Vector3>,
    amplitude: Option<Vector3>,
    radius: Option<f64>,
    period: Option<f64>,
    duration: Option<f64>,
    rate: Option<f64>,
    noise: Option<NoiseSigma>,
    seed: u64,
    used: Vec<&'static str>,
}

impl ProfileParts {
    fn build(self) -> Result<Option<MotionProfile>, ConfigError> {
        let Some((line, kind)) = self.kind else {
            if let Some(k) = self.used.first() {
                return Err(ConfigError::Invalid(format!("{k} requires a `profile` key")));
            }
            return Ok(None);
        };
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| err(line, format!("profile {kind} requires `{name}`")))
        };
        let need3 = |v: Option<Vector3>, name: &str| {
            v.ok_or_else(|| err(line, format!("profile {kind} requires `{name}`")))
        };
        let (kind_value, allowed): (ProfileKind, &[&str]) = match kind.as_str() {
            "rest" => (ProfileKind::Rest, &[]),
            "constant_accel" => (
                ProfileKind::ConstantAccel {
                    accel: need3(self.accel, "accel")?,
                },
                &["accel"],
            ),
            "linear_ramp" => (
                ProfileKind::LinearRamp {
                    jerk: need3(self.jerk, "jerk")?,
                },
                &["jerk"],
            ),
            "circle" => (
                ProfileKind::Circle {
                    radius: need(self.radius, "radius")?,
                    period: need(self.period, "period")?,
                },
                &["radius", "period"],
            ),
            "sinusoid" => (
                ProfileKind::Sinusoid {
                    amplitude: need3(self.amplitude, "amplitude")?,
                    period: need(self.period, "period")?,
                },
                &["amplitude", "period"],
            ),
            other => return Err(err(line, format!("unknown profile {other:?}"))),
        };
        for k in ["accel", "jerk", "amplitude", "radius", "period"] {
            if self.used.contains(&k) && !allowed.contains(&k) {
                return Err(err(line, format!("`{k}` does not apply to profile {kind}")));
            }
        }
        let profile = MotionProfile {
            kind: kind_value,
            duration: need(self.duration, "duration")?,
            rate: need(self.rate, "rate")?,
            noise: self.noise,
            seed: self.seed,
        };
        profile
            .validate()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(Some(profile))
    }
}

impl FromStr for Config {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut cfg = Config::default();
        let mut c = RelativityConfig::DEFAULT_C;
        let mut eps = RelativityConfig::DEFAULT_EPSILON_SPEED;
        let mut frames = Vec::new();
        let mut gravity: Option<(usize, Vector3)> = None;
        let mut stops = Vec::new();
        let mut ramp_channel = 0;
        let mut parts = ProfileParts::default();
        let p = &mut cfg.pipeline;

        for e in split_lines(text)? {
            if let Some(k) = PROFILE_KEYS.iter().find(|k| **k == e.key) {
                parts.used.push(k);
            }
            match e.key {
                "c" => c = positive(&e)?,
                "epsilon_speed" => eps = positive(&e)?,
                "accel_bias" => p.corrections.accel_bias = vec3(&e)?,
                "velocity_correction" => p.corrections.velocity_correction = vec3(&e)?,
                "rotation_order" => p.rotation_order = parse_with(&e, RotationOrder::from_str)?,
                "zeta_mode" => {
                    p.zeta_mode = match e.value {
                        "cumulative" => ZetaMode::Cumulative,
                        "incremental" => ZetaMode::Incremental,
                        other => return Err(err(e.line, format!("zeta_mode {other:?} is not cumulative or incremental"))),
                    }
                }
                "tail_window" => {
                    let v = scalar(&e)?;
                    if v < 0.0 {
                        return Err(err(e.line, format!("tail_window must be >= 0, got {v}")));
                    }
                    p.tail_window = v;
                }
                "tail_source" => {
                    p.tail_source = match e.value {
                        "raw" => TailSource::Raw,
                        "corrected" => TailSource::Corrected,
                        other => return Err(err(e.line, format!("tail_source {other:?} is not raw or corrected"))),
                    }
                }
                "frame" => frames.push(frame(&e)?),
                "gravity" => gravity = Some((e.line, vec3(&e)?)),
                "initial_velocity" => p.initial_state.velocity = vec3(&e)?,
                "initial_translation" => p.initial_state.translation = vec3(&e)?,
                "initial_angles" => {
                    let v = floats(&e, 3)?;
                    p.initial_state.angles = EulerAngles::new(v[0], v[1], v[2]);
                }
                "grid_origin" => cfg.grid.origin = Vector2::from_column_slice(&floats(&e, 2)?),
                "grid_cell_size" => cfg.grid.cell_size = positive(&e)?,
                "grid_width" => cfg.grid.width = count(&e)?,
                "grid_height" => cfg.grid.height = count(&e)?,
                "grid_auto_fit" => cfg.grid.auto_fit = flag(&e)?,
                "grid_plane" => cfg.grid.projection = parse_with(&e, Projection::from_str)?,
                "ramp_stop" => stops.push(ramp_stop(&e)?),
                "ramp_channel" => ramp_channel = channel(&e)?,
                "arrow_scale" => cfg.arrow_scale = positive(&e)?,
                "profile" => parts.kind = Some((e.line, e.value.to_string())),
                "accel" => parts.accel = Some(vec3(&e)?),
                "jerk" => parts.jerk = Some(vec3(&e)?),
                "amplitude" => parts.amplitude = Some(vec3(&e)?),
                "radius" => parts.radius = Some(positive(&e)?),
                "period" => parts.period = Some(positive(&e)?),
                "duration" => parts.duration = Some(positive(&e)?),
                "rate" => parts.rate = Some(positive(&e)?),
                "noise_accel" | "noise_gyro" | "noise_mag" => {
                    let v = scalar(&e)?;
                    if v < 0.0 {
                        return Err(err(e.line, format!("{} must be >= 0, got {v}", e.key)));
                    }
                    let n = parts.noise.get_or_insert_with(NoiseSigma::default);
                    match e.key {
                        "noise_accel" => n.accel = v,
                        "noise_gyro" => n.gyro = v,
                        _ => n.mag = v,
                    }
                }
                "seed" => {
                    parts.seed = e
                        .value
                        .parse()
                        .map_err(|_| err(e.line, format!("seed {:?} is not an unsigned 64-bit integer", e.value)))?
                }
                other => return Err(err(e.line, format!("unknown key {other:?}"))),
            }
        }

        p.relativity = RelativityConfig::new(c, eps).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if let Some((line, g)) = gravity {
            match frames.last_mut() {
                Some(last) => *last = last.with_gravity(g),
                None => return Err(err(line, "gravity requires at least one frame")),
            }
        }
        p.frame_chain = FrameChain::new(frames).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        p.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if !stops.is_empty() || ramp_channel != 0 {
            if stops.is_empty() {
                stops = ColorRamp::default().stops().to_vec();
            }
            cfg.ramp = ColorRamp::new(stops, ramp_channel).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        }
        cfg.profile = parts.build()?;
        Ok(cfg)
    }
}

//! Frame hierarchy: intrinsic sensor/camera frames, their extrinsic
//! counterparts, and the shared world frame.
//!
//! Transforms are static calibrations. A chain is an ordered list of
//! transforms where each `to` matches the next `from` and the last one ends in
//! [`FrameId::World`]. Gravity is removed using the gravity vector of the
//! world-bound (last) transform.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix3;
use thiserror::Error;

use crate::core4d::Vector3;
use crate::strapdown::ImuSample;

/// Standard gravity used as the default world-frame gravity vector.
pub const STANDARD_GRAVITY: f64 = 9.81;

const ORTHOGONALITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("BrokenChain: {0}")]
    BrokenChain(String),
    #[error("NonOrthogonal: rotation {from} -> {to} is not a proper rotation (deviation {deviation:e})")]
    NonOrthogonal {
        from: FrameId,
        to: FrameId,
        deviation: f64,
    },
    #[error("DegenerateField: horizontal magnetic field magnitude is zero")]
    DegenerateField,
    #[error("unknown frame `{0}`")]
    UnknownFrame(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameId {
    SensorIntrinsic,
    CameraIntrinsic,
    SensorExtrinsic,
    CameraExtrinsic,
    World,
}

impl FrameId {
    pub fn tag(self) -> &'static str {
        match self {
            FrameId::SensorIntrinsic => "sensor_intrinsic",
            FrameId::CameraIntrinsic => "camera_intrinsic",
            FrameId::SensorExtrinsic => "sensor_extrinsic",
            FrameId::CameraExtrinsic => "camera_extrinsic",
            FrameId::World => "world",
        }
    }
}

impl fmt::Display for FrameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FrameId {
    type Err = FrameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "sensor_intrinsic" => Ok(FrameId::SensorIntrinsic),
            "camera_intrinsic" => Ok(FrameId::CameraIntrinsic),
            "sensor_extrinsic" => Ok(FrameId::SensorExtrinsic),
            "camera_extrinsic" => Ok(FrameId::CameraExtrinsic),
            "world" => Ok(FrameId::World),
            other => Err(FrameError::UnknownFrame(other.to_string())),
        }
    }
}

/// Rigid calibration from one frame to another.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameTransform {
    pub from: FrameId,
    pub to: FrameId,
    pub rotation: Matrix3<f64>,
    pub translation: Vector3,
    /// World-frame gravity in m/s², subtracted from acceleration.
    pub gravity: Vector3,
}

impl FrameTransform {
    pub fn new(from: FrameId, to: FrameId, rotation: Matrix3<f64>, translation: Vector3) -> Self {
        Self {
            from,
            to,
            rotation,
            translation,
            gravity: Vector3::new(0.0, 0.0, STANDARD_GRAVITY),
        }
    }

    pub fn identity(from: FrameId, to: FrameId) -> Self {
        Self::new(from, to, Matrix3::identity(), Vector3::zeros())
    }

    /// Rotation about the vertical axis by `angle` radians.
    pub fn yaw(from: FrameId, to: FrameId, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        #[rustfmt::skip]
        let r = Matrix3::new(
            c, -s, 0.0,
            s, c, 0.0,
            0.0, 0.0, 1.0,
        );
        Self::new(from, to, r, Vector3::zeros())
    }

    pub fn with_gravity(mut self, gravity: Vector3) -> Self {
        self.gravity = gravity;
        self
    }

    /// Checks `RᵀR = I` and `det R = 1` within 1e-9.
    pub fn validate(&self) -> Result<(), FrameError> {
        let r = &self.rotation;
        let finite = r.iter().chain(self.translation.iter()).chain(self.gravity.iter()).all(|c| c.is_finite());
        let deviation = if finite {
            let ortho = (r.transpose() * r - Matrix3::identity()).abs().max();
            ortho.max((r.determinant() - 1.0).abs())
        } else {
            f64::INFINITY
        };
        if deviation > ORTHOGONALITY_TOLERANCE {
            return Err(FrameError::NonOrthogonal {
                from: self.from,
                to: self.to,
                deviation,
            });
        }
        Ok(())
    }

    /// Maps a point from `self.from` to `self.to`.
    pub fn transform_point(&self, p: &Vector3) -> Vector3 {
        self.rotation * p + self.translation
    }

    /// Single transform equivalent to `self` followed by `next`. The gravity
    /// of `next` is kept since it sits closer to the world frame.
    pub fn then(&self, next: &FrameTransform) -> Result<FrameTransform, FrameError> {
        if self.to != next.from {
            return Err(FrameError::BrokenChain(format!(
                "{} -> {} cannot be followed by {} -> {}",
                self.from, self.to, next.from, next.to
            )));
        }
        Ok(FrameTransform {
            from: self.from,
            to: next.to,
            rotation: next.rotation * self.rotation,
            translation: next.rotation * self.translation + next.translation,
            gravity: next.gravity,
        })
    }
}

/// A validated chain of transforms ending in the world frame.
///
/// An empty chain means samples are already world-frame and gravity-free.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameChain {
    transforms: Vec<FrameTransform>,
    rotation: Matrix3<f64>,
    gravity: Vector3,
}

impl Default for FrameChain {
    fn default() -> Self {
        Self {
            transforms: Vec::new(),
            rotation: Matrix3::identity(),
            gravity: Vector3::zeros(),
        }
    }
}

impl FrameChain {
    pub fn new(transforms: Vec<FrameTransform>) -> Result<Self, FrameError> {
        let mut rotation = Matrix3::identity();
        for (i, tf) in transforms.iter().enumerate() {
            tf.validate()?;
            if let Some(next) = transforms.get(i + 1) {
                if tf.to != next.from {
                    return Err(FrameError::BrokenChain(format!(
                        "link {i} ends in {} but link {} starts in {}",
                        tf.to,
                        i + 1,
                        next.from
                    )));
                }
            }
            rotation = tf.rotation * rotation;
        }
        let gravity = match transforms.last() {
            Some(last) if last.to != FrameId::World => {
                return Err(FrameError::BrokenChain(format!(
                    "chain ends in {} instead of world",
                    last.to
                )))
            }
            Some(last) => last.gravity,
            None => Vector3::zeros(),
        };
        Ok(Self {
            transforms,
            rotation,
            gravity,
        })
    }

    pub fn transforms(&self) -> &[FrameTransform] {
        &self.transforms
    }

    /// The frame samples are expected in.
    pub fn source(&self) -> FrameId {
        self.transforms.first().map_or(FrameId::World, |t| t.from)
    }

    pub fn rotation(&self) -> Matrix3<f64> {
        if self.transforms.is_empty() {
            Matrix3::identity()
        } else {
            self.rotation
        }
    }

    pub fn gravity(&self) -> Vector3 {
        self.gravity
    }

    pub fn apply(&self, sample: &ImuSample) -> ImuSample {
        if self.transforms.is_empty() {
            return *sample;
        }
        let r = &self.rotation;
        ImuSample {
            t: sample.t,
            accel: r * sample.accel - self.gravity,
            gyro: r * sample.gyro,
            mag: r * sample.mag,
        }
    }
}

/// Expresses a sample in the world frame and removes gravity from its
/// acceleration: `a' = R·a - g`, `ω' = R·ω`, `B' = R·B`.
pub fn to_world(sample: &ImuSample, chain: &[FrameTransform]) -> Result<ImuSample, FrameError> {
    Ok(FrameChain::new(chain.to_vec())?.apply(sample))
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(angle: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut w = angle - two_pi * ((angle + PI) / two_pi).floor();
    if w <= -PI {
        w += two_pi;
    }
    if w > PI {
        w -= two_pi;
    }
    w
}

/// Heading `atan2(m_y, m_x) + declination`, wrapped into `(-π, π]`.
pub fn heading_from_magnetic(mag: &Vector3, declination: f64) -> Result<f64, FrameError> {
    if mag.x.hypot(mag.y) == 0.0 {
        return Err(FrameError::DegenerateField);
    }
    Ok(wrap_angle(mag.y.atan2(mag.x) + declination))
}
